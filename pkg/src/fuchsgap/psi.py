"""Polynomial products of solutions and the spectral curve.

Products of two solutions of y'' + P y' + Q y = 0 satisfy the third-order
equation

    Psi''' + 3P Psi'' + (P' + 4Q + 2P^2) Psi' + (2Q' + 4PQ) Psi = 0.

With P = p/S and Q = q/(4S) (S = z(z-1)(z-a) prod(z-b_k)) the left side times
2S^2 is the polynomial operator

    2S^2 Psi''' + 6Sp Psi'' + (2(p'S - pS') + 2Sq + 4p^2) Psi' + (q'S - qS' + 2pq) Psi

which is what :class:`ProductODE` stores.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ParamScalar, nullspace
from .fuchsian import FuchsianEquation, search_range
from .polys import LZPoly


class NotFiniteGapError(ArithmeticError):
    """No polynomial Psi exists up to the genus upper bound."""


class PsiAmbiguityError(ArithmeticError):
    pass


class SpectralCurveError(ArithmeticError):
    pass


@dataclass
class ProductODE:
    c3: LZPoly
    c2: LZPoly
    c1: LZPoly
    c0: LZPoly
    denominator: LZPoly  # true coefficients are c_i / denominator

    def apply(self, psi: LZPoly) -> LZPoly:
        """2 S^2 times the left-hand side, as a polynomial in (lambda, z)."""
        return self.c3 * psi.dz(3) + self.c2 * psi.dz(2) + self.c1 * psi.dz(1) + self.c0 * psi


@dataclass
class PsiPolynomial:
    poly: LZPoly
    genus: int
    N: int

    def coefficient(self, j: int) -> LZPoly:
        """The z-polynomial multiplying lambda**(g - j)."""
        return self.poly.lambda_coeff(self.genus - j)

    def __eq__(self, other):
        if isinstance(other, PsiPolynomial):
            return self.poly == other.poly
        return self.poly == other


@dataclass
class SpectralCurve:
    coeffs: list[ParamScalar]  # constant first
    genus: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_poly(self) -> LZPoly:
        F = self.coeffs[0].field
        return LZPoly(F, {(i, 0): c for i, c in enumerate(self.coeffs)})

    def evaluate(self, lam: complex, values: dict) -> complex:
        return sum(c.evaluate(values) * lam**i for i, c in enumerate(self.coeffs))


@dataclass
class PsiReport:
    ok: bool
    residual: LZPoly = field(repr=False)


def build_product_ode(eq: FuchsianEquation) -> ProductODE:
    S, p, q = eq.S, eq.p_num, eq.q_num
    dS, dp, dq = S.dz(), p.dz(), q.dz()
    c3 = S * S * 2
    c2 = S * p * 6
    c1 = (dp * S - p * dS) * 2 + S * q * 2 + p * p * 4
    c0 = dq * S - q * dS + p * q * 2
    return ProductODE(c3, c2, c1, c0, S * S * 2)


def verify_psi(eq: FuchsianEquation, psi) -> PsiReport:
    poly = psi.poly if isinstance(psi, PsiPolynomial) else psi
    r = build_product_ode(eq).apply(poly)
    return PsiReport(r.is_zero(), r)


def _solve_at_genus(eq: FuchsianEquation, ode: ProductODE, images: list[LZPoly], g: int):
    """Solve for Psi = a0 lambda^g + ... with fixed a0; None when inconsistent."""
    F = eq.field
    N = eq.chars.N
    lead = eq.leading_psi()
    unknowns = [(i, j) for i in range(g) for j in range(N + 1)]  # lambda^i z^j, i < g
    columns = []
    for i, j in unknowns:
        columns.append(images[j] * LZPoly(F, {(i, 0): F.one}))
    rhs = ode.apply(lead * LZPoly(F, {(g, 0): F.one}))
    columns.append(rhs)
    keys = sorted({k for c in columns for k in c.terms})
    if not keys:
        return lead * LZPoly(F, {(g, 0): F.one})
    M = [[c.coeff(*k) for c in columns] for k in keys]
    basis = nullspace(M)
    sols = [v for v in basis if v[-1]]
    if not sols:
        return None
    if len(basis) > 1:
        raise PsiAmbiguityError(f"Psi is not unique at genus {g}: kernel dimension {len(basis)}")
    v = sols[0]
    t_inv = v[-1].inverse()
    psi = lead * LZPoly(F, {(g, 0): F.one})
    for (i, j), x in zip(unknowns, v[:-1]):
        if x:
            psi = psi + LZPoly(F, {(i, j): x * t_inv})
    return psi


def solve_psi(eq: FuchsianEquation, lower: int | None = None, upper: int | None = None) -> PsiPolynomial:
    """Smallest-genus polynomial solution of the product equation with the fixed leading part."""
    N = eq.chars.N
    lo, hi = search_range(eq.chars)
    if lower is not None:
        lo = lower
    if upper is not None:
        hi = upper
    ode = build_product_ode(eq)
    F = eq.field
    images = [ode.apply(LZPoly(F, {(0, j): F.one})) for j in range(N + 1)]
    for g in range(lo, hi + 1):
        psi = _solve_at_genus(eq, ode, images, g)
        if psi is not None:
            if not verify_psi(eq, psi).ok:
                raise ArithmeticError("solved Psi failed exact verification")
            return PsiPolynomial(psi, g, N)
    raise NotFiniteGapError(f"no polynomial solution with genus in [{lo}, {hi}]: equation is not finite-gap")


def spectral_curve(eq: FuchsianEquation, psi: PsiPolynomial) -> SpectralCurve:
    """nu^2(lambda) = (2 Psi Psi'' - Psi'^2 + 2P Psi Psi' + 4Q Psi^2) / (...)."""
    F = eq.field
    m, n = eq.chars.m, eq.chars.n
    Y = psi.poly
    dY, ddY = Y.dz(), Y.dz(2)
    num = eq.S * (Y * ddY * 2 - dY * dY) + eq.p_num * Y * dY * 2 + eq.q_num * Y * Y
    roots = [(F.zero, 2 * m[1]), (F.one, 2 * m[2]), (eq.a, 2 * m[3])]
    roots += [(bk, 4 * nk + 1) for bk, nk in zip(eq.b, n)]
    den = LZPoly.product_of_linear(F, roots)
    quo, rem = num.divmod_z(den)
    if not rem.is_zero():
        raise SpectralCurveError("numerator is not divisible by the expected z-factor")
    if quo.degree_z() > 0:
        raise SpectralCurveError("nu^2 depends on z")
    coeffs = quo.lambda_coeffs()
    g = psi.genus
    if len(coeffs) != 2 * g + 2 or coeffs[-1] != 1:
        raise SpectralCurveError(f"nu^2 is not monic of degree {2 * g + 1}")
    return SpectralCurve(coeffs, g)
