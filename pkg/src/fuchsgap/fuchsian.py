"""Fuchsian equations y'' + P y' + Q y = 0 with singular points 0, 1, a, b_k, infinity."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import NamedTuple, Sequence

from .algebra import GENERIC, SYMBOLIC, ParamField, ParamScalar
from .polys import LZPoly
from .rational import RationalFunctionZ


class DegenerateConfigurationError(ValueError):
    pass


class NotSingularError(ValueError):
    pass


@dataclass(frozen=True)
class Characteristics:
    m: tuple[int, int, int, int]
    n: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(int(x) for x in self.m))
        object.__setattr__(self, "n", tuple(int(x) for x in self.n))
        if len(self.m) != 4:
            raise ValueError("need exactly four characteristics m0..m3")
        if any(x < 0 for x in self.m + self.n):
            raise ValueError("characteristics must be nonnegative")

    @property
    def M(self) -> int:
        return len(self.n)

    @property
    def N(self) -> int:
        return sum(self.m) + 2 * sum(self.n)


@dataclass
class SingularConfig:
    field: ParamField
    b: list[ParamScalar] = field(default_factory=list)

    @property
    def a(self) -> ParamScalar:
        return self.field.a

    def check(self):
        F = self.field
        pts = [F.zero, F.one, self.a] + list(self.b)
        for i in range(len(pts)):
            for j in range(i):
                if pts[i] == pts[j]:
                    raise DegenerateConfigurationError(f"singular points {pts[j]} and {pts[i]} coincide")
        # distinct as elements is not enough modulo a reducible condition: require invertibility
        for i in range(len(pts)):
            for j in range(i):
                (pts[i] - pts[j]).inverse()

    @classmethod
    def standard(cls, chars: Characteristics, a=SYMBOLIC, branch=None) -> "SingularConfig":
        """Config with one symbolic point ``b`` (generic, or modulo ``branch``)."""
        if chars.M == 0:
            return cls(ParamField(a=a))
        if chars.M > 1:
            raise ValueError("standard config supports a single extra point; pass b values explicitly")
        F = ParamField(a=a, b=branch if branch is not None else GENERIC)
        return cls(F, [F.b])


class GenusBounds(NamedTuple):
    lower: int
    upper: int
    trivial: bool


@dataclass
class FuchsianEquation:
    chars: Characteristics
    config: SingularConfig
    P: RationalFunctionZ
    Q0: RationalFunctionZ  # lambda-free part of Q
    Q1: RationalFunctionZ  # coefficient of lambda in Q
    rho: list[ParamScalar]
    S: LZPoly  # z(z-1)(z-a) prod(z-b_k)
    p_num: LZPoly  # S * P
    q_num: LZPoly  # 4 S * Q, linear in lambda

    @property
    def field(self) -> ParamField:
        return self.config.field

    @property
    def a(self) -> ParamScalar:
        return self.config.a

    @property
    def b(self) -> list[ParamScalar]:
        return self.config.b

    def points(self) -> dict[str, ParamScalar]:
        F = self.field
        pts = {"0": F.zero, "1": F.one, "a": self.a}
        pts.update({f"b{k + 1}": bk for k, bk in enumerate(self.b)})
        return pts

    def leading_psi(self) -> LZPoly:
        """z^m1 (z-1)^m2 (z-a)^m3 prod (z-b_k)^(2 n_k)."""
        m, n = self.chars.m, self.chars.n
        F = self.field
        roots = [(F.zero, m[1]), (F.one, m[2]), (self.a, m[3])]
        roots += [(bk, 2 * nk) for bk, nk in zip(self.b, n)]
        return LZPoly.product_of_linear(F, roots)

    def Q(self, lam) -> RationalFunctionZ:
        return self.Q0 + self.Q1 * lam


def rho_values(chars: Characteristics, a: ParamScalar, b: Sequence[ParamScalar]) -> list[ParamScalar]:
    m1, m2, m3 = chars.m[1:]
    out = []
    for k, (bk, nk) in enumerate(zip(b, chars.n)):
        r = (2 * (bk - 1) * (bk - a) * m1 + 2 * bk * (bk - a) * m2 + 2 * bk * (bk - 1) * m3
             + (3 * bk * bk - 2 * (a + 1) * bk + a) * nk)
        for j, (bj, nj) in enumerate(zip(b, chars.n)):
            if j != k and nj:
                r = r + 4 * bk * (bk - 1) * (bk - a) / (bk - bj) * nj
        out.append(r)
    return out


def build_equation(chars: Characteristics, config: SingularConfig) -> FuchsianEquation:
    if len(config.b) != chars.M:
        raise ValueError(f"expected {chars.M} extra points, got {len(config.b)}")
    config.check()
    F = config.field
    a, b = config.a, config.b
    m0, m1, m2, m3 = chars.m
    N = chars.N
    half = Fraction(1, 2)
    pts = {"0": F.zero, "1": F.one, "a": a}
    pts.update({f"b{k + 1}": bk for k, bk in enumerate(b)})

    poles = {"0": [half * (1 - 2 * m1)], "1": [half * (1 - 2 * m2)], "a": [half * (1 - 2 * m3)]}
    for k, nk in enumerate(chars.n):
        poles[f"b{k + 1}"] = [-2 * nk]
    P = RationalFunctionZ(F, (), poles, pts)

    rho = rho_values(chars, a, b)
    # 1 / (4 z (z-1)(z-a)) in partial fractions
    inv_a = a.inverse()
    inv_a1 = (a - 1).inverse()
    base = {"0": [inv_a / 4], "1": [-inv_a1 / 4], "a": [inv_a * inv_a1 / 4]}
    Q1 = RationalFunctionZ(F, (), base, pts)
    Q0 = Q1.mul_poly([0, N * (N - 2 * m0 - 1)])
    for k, (bk, nk) in enumerate(zip(b, chars.n)):
        if nk:
            term = RationalFunctionZ(F, (), {f"b{k + 1}": [2 * nk * rho[k]]}, pts)
            Q0 = Q0 + Q1 * term

    zz = LZPoly.z(F)
    B = LZPoly.product_of_linear(F, [(bk, 1) for bk in b])
    S = zz * (zz - 1) * (zz - a) * B
    p_num = ((zz - 1) * (zz - a) * (1 - 2 * m1) + zz * (zz - a) * (1 - 2 * m2) + zz * (zz - 1) * (1 - 2 * m3)) * B * half
    q_num = (zz * (N * (N - 2 * m0 - 1)) + LZPoly.lam(F)) * B
    for k, (bk, nk) in enumerate(zip(b, chars.n)):
        others = LZPoly.product_of_linear(F, [(bj, 1) for j, bj in enumerate(b) if j != k])
        p_num = p_num - zz * (zz - 1) * (zz - a) * others * (2 * nk)
        q_num = q_num + others * (2 * nk * rho[k])
    return FuchsianEquation(chars, config, P, Q0, Q1, rho, S, p_num, q_num)


def _rational_roots(c1: Fraction, c0: Fraction) -> tuple[Fraction, Fraction]:
    """Roots of r^2 + c1 r + c0 = 0, required rational."""
    disc = c1 * c1 - 4 * c0
    num, den = disc.numerator, disc.denominator
    rn, rd = isqrt(num) if num >= 0 else -1, isqrt(den)
    if num < 0 or rn * rn != num or rd * rd != den:
        raise ArithmeticError(f"indicial equation has irrational roots (discriminant {disc})")
    s = Fraction(rn, rd)
    return ((-c1 + s) / 2, (-c1 - s) / 2)


def characteristic_exponents(eq: FuchsianEquation, point) -> tuple[Fraction, Fraction]:
    """Roots of the indicial equation at ``point`` ("0", "1", "a", "inf" or "b<k>")."""
    point = str(point)
    if point in ("inf", "infinity", "oo"):
        # y ~ z**(-r):  r**2 + (1 - p_inf) r + q_inf = 0
        p_inf = sum((c[0] for c in eq.P.poles.values()), eq.field.zero)
        q_inf = eq.Q0.at_infinity(2).get(2, eq.field.zero)
        p_inf, q_inf = p_inf.to_fraction(), q_inf.to_fraction()
        return _rational_roots(1 - p_inf, q_inf)
    if point not in eq.points():
        raise NotSingularError(f"{point} is not a singular point of the equation")
    p0 = eq.P.residue(point).to_fraction()
    if eq.Q0.pole_order(point) > 1 or eq.Q1.pole_order(point) > 1:
        raise ArithmeticError("Q has a pole of order > 1 at a finite point")
    if p0 == 0 and eq.Q0.pole_order(point) == 0 and eq.Q1.pole_order(point) == 0:
        raise NotSingularError(f"{point} is an ordinary point")
    return _rational_roots(p0 - 1, Fraction(0))


def closed_form_exponents(chars: Characteristics, point: str) -> tuple[Fraction, Fraction]:
    m0, m1, m2, m3 = chars.m
    N = chars.N
    table = {"0": m1, "1": m2, "a": m3}
    if point in table:
        return (Fraction(1, 2) + table[point], Fraction(0))
    if point in ("inf", "infinity", "oo"):
        return (Fraction(-N, 2), Fraction(-(N - 2 * m0 - 1), 2))
    k = int(point[1:]) - 1
    return (Fraction(2 * chars.n[k] + 1), Fraction(0))


def genus_bounds(chars: Characteristics) -> GenusBounds:
    N = chars.N
    if N == 0:
        return GenusBounds(0, -1, True)
    return GenusBounds(max(chars.m), N - 1, False)


def search_range(chars: Characteristics) -> tuple[int, int]:
    """Genus range to search.

    Without extra points the upper bound N - 1 can fall below max m_i (for
    instance m = (2, 0, 0, 0)), so the range is widened to include the lower
    bound.
    """
    bounds = genus_bounds(chars)
    if bounds.trivial:
        return 0, 0
    return bounds.lower, max(bounds.lower, bounds.upper)


def heun_genus(chars: Characteristics) -> int:
    if chars.M:
        raise ValueError("closed genus formula applies only without extra points (M = 0)")
    N = sum(chars.m)
    if N % 2 == 0:
        return max(max(chars.m), N // 2 - min(chars.m))
    return max(max(chars.m), (N + 1) // 2)
