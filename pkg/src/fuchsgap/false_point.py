"""Where must the extra singular point sit so that it is apparent (log-free)?

Two independent routes: the explicit sextic in ``b`` valid for a single extra
point with ``n = 1``, and the Frobenius recursion at ``z = b_k`` which works
for any ``n_k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from .algebra import (
    GENERIC,
    SYMBOLIC,
    ConditionPolynomial,
    ParamField,
    ParamScalar,
    base_field,
    to_base,
    uderiv,
    udivmod,
    ugcd,
    umonic,
    usquarefree,
)
from .fuchsian import Characteristics, FuchsianEquation


@dataclass
class SexticCondition:
    k_sq: tuple[Fraction, Fraction, Fraction, Fraction]
    h2: object
    h3: object
    h4: object
    poly: ConditionPolynomial


@dataclass
class Obstruction:
    """Coefficients (by power of lambda) that must vanish for a log-free point."""

    coeffs: list[ParamScalar]
    order: int
    degenerate: bool = False

    @property
    def value(self) -> ParamScalar:
        """The lambda-free part; for n = 1 it is the only coefficient."""
        return self.coeffs[0] if self.coeffs else None

    def is_zero(self) -> bool:
        return all(not c for c in self.coeffs)


@dataclass
class Branch:
    factor: ConditionPolynomial
    multiplicity: int = 1
    roots: list = field(default_factory=list)  # (value, exact) pairs for numeric a


def _a_field(a):
    K = base_field(("a",)) if a == SYMBOLIC else base_field(())
    a_el = K.gens[0] if a == SYMBOLIC else to_base(K, Fraction(a))
    return K, a_el


def sextic_condition(m: Sequence[int], a=SYMBOLIC) -> SexticCondition:
    """The degree-6 polynomial in b whose roots make z = b an apparent point (n = 1)."""
    K, A = _a_field(a)
    k = [to_base(K, (Fraction(mj) + Fraction(1, 2)) ** 2) for mj in m]
    k0, k1, k2, k3 = k
    h4 = (k0 - k3) * A**2 + (4 * k0 + k2 + k3 - k1) * A + k0 - k2
    h3 = (k1 + k3 - k0 - k2) * A + k1 + k2 - k0 - k3
    h2 = (k2 - k1) * A**2 + (k0 - 4 * k1 - k2 - k3) * A + k3 - k1
    coeffs = [-k1 * A**3, 2 * k1 * A**2 * (A + 1), A * h2, 2 * A * h3, h4, -2 * k0 * (A + 1), k0]
    poly = ConditionPolynomial(coeffs, K, tag="sextic", check=False)
    k_sq = tuple((Fraction(mj) + Fraction(1, 2)) ** 2 for mj in m)
    return SexticCondition(k_sq, h2, h3, h4, poly)


def _lambda_series_mul(x: list, y: list, zero) -> list:
    out = [zero] * (len(x) + len(y) - 1) if x and y else []
    for i, u in enumerate(x):
        for j, v in enumerate(y):
            if u and v:
                out[i + j] = out[i + j] + u * v
    return out


def frobenius_obstruction(eq: FuchsianEquation, k: int = 0) -> Obstruction:
    """Run the exponent-0 Frobenius series at z = b_k up to the resonant order 2 n_k + 1."""
    label = f"b{k + 1}"
    F = eq.field
    nk = eq.chars.n[k]
    bk = eq.b[k]
    for c in (F.zero, F.one, eq.a):
        (bk - c).inverse()  # raises if b_k collides with 0, 1, a modulo the branch
    order = 2 * nk + 1
    if nk == 0:
        return Obstruction([], order, degenerate=True)
    Pl = eq.P.laurent(label, order)
    Q0 = eq.Q0.laurent(label, order)
    Q1 = eq.Q1.laurent(label, order)
    zero = F.zero
    p = [Pl.get(j - 1, zero) for j in range(order + 1)]
    q = [[Q0.get(j - 2, zero), Q1.get(j - 2, zero)] for j in range(order + 1)]
    if p[0] != -2 * nk or q[0][0] or q[0][1]:
        raise ArithmeticError("unexpected local exponents at the extra point")
    c = [[F.one]]  # c[j] is a list of lambda-coefficients
    for j in range(1, order + 1):
        acc: list = []
        for i in range(j):
            coeff = [q[j - i][0] + p[j - i] * i, q[j - i][1]]
            term = _lambda_series_mul(coeff, c[i], zero)
            acc = [(acc[t] if t < len(acc) else zero) + (term[t] if t < len(term) else zero)
                   for t in range(max(len(acc), len(term)))]
        if j == order:
            while acc and not acc[-1]:
                acc.pop()
            return Obstruction(acc, order)
        denom = F(j * (j - 1 - 2 * nk)).inverse()
        c.append([-x * denom for x in acc])
    raise AssertionError("unreachable")


def _factor_over_qa(poly: ConditionPolynomial, tag: str = "sextic-factor") -> list[tuple[ConditionPolynomial, int]]:
    """Irreducible factors in b over Q(a) (or Q) with multiplicities."""
    K = poly.K
    out = []
    for part, mult in usquarefree(poly.coeffs):
        expr = ConditionPolynomial(part, K, check=False).as_expr()
        num, _ = sympy.fraction(sympy.together(expr))
        b = sympy.Symbol("b")
        for fac, e in sympy.factor_list(num)[1]:
            if sympy.degree(fac, b) <= 0:
                continue
            cp = ConditionPolynomial.from_expr(fac, K=K, tag=tag)
            out.append((cp, mult * e))
    return out


def _numeric_roots(factor: ConditionPolynomial, digits: int = 30) -> list[tuple[object, bool]]:
    expr = factor.as_expr()
    b = sympy.Symbol("b")
    poly = sympy.Poly(expr, b)
    if poly.degree() == 1:
        c1, c0 = poly.all_coeffs()
        return [(Fraction(str(-c0 / c1)), True)]
    return [(complex(r), False) for r in sympy.Poly(expr, b).nroots(n=digits)]


def enumerate_candidates(m: Sequence[int], a=SYMBOLIC) -> list[Branch]:
    """Branches of the sextic: one per irreducible factor, with numeric roots when a is rational."""
    sextic = sextic_condition(m, a).poly
    branches = []
    for fac, mult in _factor_over_qa(sextic):
        roots = _numeric_roots(fac) if a != SYMBOLIC else []
        branches.append(Branch(fac, mult, roots))
    return branches


def generic_field(a=SYMBOLIC) -> ParamField:
    return ParamField(a=a, b=GENERIC)


def numerator_in_b(x: ParamScalar) -> ConditionPolynomial:
    """Numerator of a generic-b element, as a polynomial in b over Q(a)."""
    F = x.field
    if F.b_mode != "generic":
        raise ValueError("expected an element of a generic-b field")
    expr = sympy.fraction(sympy.together(x.as_expr()))[0]
    names = tuple(n for n in F.names if n != "b")
    return ConditionPolynomial.from_expr(expr, K=base_field(names), tag="derived", check=False)


def proportionality_factor(f: ConditionPolynomial, g: ConditionPolynomial):
    """Return c in Q(a) with f = c g, or None when the two are not proportional."""
    if f.degree != g.degree:
        return None
    q, r = udivmod(f.coeffs, g.coeffs)
    if r or len(q) != 1:
        return None
    return q[0]


def strip_excluded_factors(f: ConditionPolynomial, a=SYMBOLIC) -> ConditionPolynomial:
    """Remove powers of b, b - 1, b - a (points excluded by the configuration)."""
    K = f.K
    _, A = _a_field(a)
    coeffs = list(f.coeffs)
    for root in (K.zero, K.one, A):
        lin = [-root, K.one]
        while True:
            q, r = udivmod(coeffs, lin)
            if r:
                break
            coeffs = q
    return ConditionPolynomial(coeffs, K, f.tag, check=False)


def obstruction_condition(eq: FuchsianEquation, k: int = 0) -> ConditionPolynomial:
    """Common numerator (gcd over the lambda-coefficients) of the obstruction, generic b.

    Works for any n_k; the points b, 1 and a are stripped from the result.
    """
    if eq.field.b_mode != "generic" or eq.chars.M != 1:
        raise ValueError("obstruction_condition needs a single generic extra point")
    ob = frobenius_obstruction(eq, k)
    a = eq.field.a_value
    nums = [strip_excluded_factors(numerator_in_b(c), a) for c in ob.coeffs if c]
    if not nums:
        raise ValueError("obstruction vanishes identically")
    g = nums[0].coeffs
    for x in nums[1:]:
        g = ugcd(g, x.coeffs)
    if len(g) < 2:
        return None
    return ConditionPolynomial(g, nums[0].K, tag="obstruction", check=False)


def obstruction_candidates(m: Sequence[int], n: int, a) -> list[Branch]:
    """Numeric candidate positions for one extra point with characteristic ``n`` at rational ``a``."""
    from .fuchsian import SingularConfig, build_equation

    if a == SYMBOLIC:
        raise ValueError("numeric candidates need a rational a")
    chars = Characteristics(tuple(m), (n,))
    eq = build_equation(chars, SingularConfig.standard(chars, a=Fraction(a)))
    cond = obstruction_condition(eq)
    if cond is None:
        return []
    return [Branch(fac, mult, _numeric_roots(fac)) for fac, mult in _factor_over_qa(cond, "obstruction-factor")]
