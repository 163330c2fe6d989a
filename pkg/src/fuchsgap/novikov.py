"""Novikov's equation on the z-side.

I_0 is built from the characteristics, I_{j+1} = L(I_j) with

    L(f) = z(z-1)(z-a) f'' + (3z^2 - 2(a+1)z + a)/2 f' - int(4 I_0 f' + 2 f I_0') dz,

and the genus is the first order g at which I_g falls into the span of
1, I_0, ..., I_{g-1}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import ConditionPolynomial, ParamScalar
from .false_point import numerator_in_b, proportionality_factor, sextic_condition, strip_excluded_factors
from .fuchsian import FuchsianEquation, genus_bounds, search_range
from .rational import RationalFunctionZ


class NovikovInconsistencyError(ArithmeticError):
    pass


@dataclass
class NovikovRelation:
    """I_g + sum_j c[j-1] I_{g-j} = d, with I_j the raw iterates."""

    genus: int
    c: list[ParamScalar]
    d: ParamScalar
    reduced: list[RationalFunctionZ] = field(default_factory=list, repr=False)
    raw: list[RationalFunctionZ] = field(default_factory=list, repr=False)


def build_I0(eq: FuchsianEquation) -> RationalFunctionZ:
    F = eq.field
    a = eq.a
    m0, m1, m2, m3 = eq.chars.m
    pts = eq.points()
    q = Fraction(1, 4)
    w0, w1, w2, w3 = (q * mi * (mi + 1) for mi in (m0, m1, m2, m3))
    # m2 (z-a)/(z-1) = m2 (1 + (1-a)/(z-1));  m3 a(z-1)/(z-a) = m3 a (1 + (a-1)/(z-a))
    poly = [w2 + w3 * a, w0]
    poles = {"0": [w1 * a], "1": [(1 - a) * w2], "a": [a * (a - 1) * w3]}
    for k, (bk, nk) in enumerate(zip(eq.b, eq.chars.n)):
        s = nk * (nk + 1)
        poles[f"b{k + 1}"] = [s * (3 * bk * bk - 2 * (a + 1) * bk + a) / 2, s * bk * (bk - 1) * (bk - a)]
    return RationalFunctionZ(F, poly, poles, pts)


def apply_L(eq: FuchsianEquation, f: RationalFunctionZ, I0: RationalFunctionZ | None = None,
            constant=0) -> RationalFunctionZ:
    """One step of the recursion; ``constant`` is the integration constant (0 by default)."""
    if I0 is None:
        I0 = build_I0(eq)
    a = eq.a
    d1 = f.derivative()
    d2 = d1.derivative()
    cubic = [eq.field.zero, a, -(a + 1), 1]  # z(z-1)(z-a)
    quad = [a / 2, -(a + 1), eq.field(Fraction(3, 2))]
    integrand = I0 * d1 * 4 + f * I0.derivative() * 2
    return d2.mul_poly(cubic) + d1.mul_poly(quad) - integrand.antiderivative(constant)


def tune_b_residue(eq: FuchsianEquation, check_sextic: bool = True) -> ConditionPolynomial:
    """Condition on b that kills the residue of I_1 + c I_0 at z = b (single point, n = 1)."""
    if eq.chars.M != 1 or eq.chars.n[0] != 1:
        raise ValueError("residue tuning needs exactly one extra point with n = 1")
    if eq.field.b_mode != "generic":
        raise ValueError("residue tuning needs a generic b")
    I0 = build_I0(eq)
    I1 = apply_L(eq, I0, I0)
    if I1.pole_order("b1") > 2:
        raise ArithmeticError("I_1 has a pole of order > 2 at z = b")
    lead = I0.coefficient("b1", 2)
    c = -I1.coefficient("b1", 2) / lead
    res = I1.residue("b1") + c * I0.residue("b1")
    cond = strip_excluded_factors(numerator_in_b(res), eq.field.a_value)
    cond = ConditionPolynomial(cond.coeffs, cond.K, "residue", check=False)
    if check_sextic:
        sextic = sextic_condition(eq.chars.m, eq.field.a_value).poly
        if proportionality_factor(cond, sextic) is None:
            raise ArithmeticError("residue condition is not proportional to the sextic")
    return cond


def _reduce(vec: dict, basis: list[tuple[object, dict, dict]], F) -> tuple[dict, dict]:
    """Reduce ``vec`` against an echelon basis; also track the combination subtracted."""
    vec = dict(vec)
    combo: dict = {}
    for key, bvec, bcombo in basis:
        c = vec.get(key)
        if not c:
            continue
        for k, v in bvec.items():
            nv = vec.get(k, F.zero) - c * v
            if nv:
                vec[k] = nv
            else:
                vec.pop(k, None)
        for k, v in bcombo.items():
            combo[k] = combo.get(k, F.zero) - c * v
    return vec, combo


def _pivot_key(vec: dict, b_labels: set[str]):
    # prefer eliminating poles at the extra points, highest order first
    keys = sorted(vec, key=lambda k: (k[0] not in b_labels, -k[1] if k[0] != "poly" else k[1], str(k[0])))
    return keys[0]


def find_novikov_relation(eq: FuchsianEquation, constant=0, max_order: int | None = None) -> NovikovRelation:
    """Minimal g with I_g in span(1, I_0, ..., I_{g-1}); raises when none is found by N - 1."""
    F = eq.field
    bounds = genus_bounds(eq.chars)
    lower, upper = search_range(eq.chars)
    if max_order is not None:
        upper = max_order
    I0 = build_I0(eq)
    b_labels = {f"b{k + 1}" for k in range(eq.chars.M)}
    # echelon basis entries: (pivot key, vector, combination of raw generators)
    # generators are indexed "1" for the constant and j for I_j
    basis: list[tuple[object, dict, dict]] = []

    def insert(vec, combo):
        piv = _pivot_key(vec, b_labels)
        inv = vec[piv].inverse()
        vec = {k: v * inv for k, v in vec.items()}
        combo = {k: v * inv for k, v in combo.items()}
        # keep fully reduced: clear the new pivot from existing rows
        for idx, (key, bvec, bcombo) in enumerate(basis):
            c = bvec.get(piv)
            if c:
                nb = dict(bvec)
                for k, v in vec.items():
                    nv = nb.get(k, F.zero) - c * v
                    if nv:
                        nb[k] = nv
                    else:
                        nb.pop(k, None)
                nc = dict(bcombo)
                for k, v in combo.items():
                    nc[k] = nc.get(k, F.zero) - c * v
                basis[idx] = (key, nb, nc)
        basis.append((piv, vec, combo))

    insert({("poly", 0): F.one}, {"1": F.one})
    raw = [I0]
    reduced = []
    current = I0
    for j in range(0, upper + 1):
        if j > 0:
            current = apply_L(eq, raw[-1], I0, constant)
            raw.append(current)
        vec, combo = _reduce(current.coefficient_vector(), basis, F)
        combo[j] = combo.get(j, F.zero) + F.one
        if not vec:
            # sum combo[i] * I_i + combo["1"] = 0, with combo[j] = 1
            c = [combo.get(j - i, F.zero) for i in range(1, j + 1)]
            d = -combo.get("1", F.zero)
            rel = NovikovRelation(j, c, d, reduced, raw)
            if not (lower <= j <= upper):
                raise NovikovInconsistencyError(f"genus {j} outside bounds {bounds}")
            return rel
        reduced.append(_as_function(eq, vec))
        insert(vec, combo)
    raise NovikovInconsistencyError(
        f"no Novikov relation up to order {upper}; the extra points are probably not apparent")


def _as_function(eq: FuchsianEquation, vec: dict) -> RationalFunctionZ:
    F = eq.field
    poly_deg = max((k[1] for k in vec if k[0] == "poly"), default=-1)
    poly = [vec.get(("poly", i), F.zero) for i in range(poly_deg + 1)]
    poles: dict = {}
    for (label, k), v in vec.items():
        if label == "poly":
            continue
        lst = poles.setdefault(label, [])
        while len(lst) < k:
            lst.append(F.zero)
        lst[k - 1] = v
    return RationalFunctionZ(F, poly, poles, eq.points())


def check_relation(rel: NovikovRelation) -> bool:
    g = rel.genus
    total = rel.raw[g]
    for j, cj in enumerate(rel.c, start=1):
        total = total + rel.raw[g - j] * cj
    return total == rel.d
