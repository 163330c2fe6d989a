"""Elliptic side of the change of variables.

With wp(x) = e1 + (e2 - e1) z the singular points 0, 1, a correspond to the
half-periods, e2 = (a-2)/(a+1) e1, e3 = (1-2a)/(a+1) e1, and each extra point
b_k sits at wp(delta_k) = (a + 1 - 3 b_k)/(a + 1) e1.  Nothing here evaluates
wp transcendentally: relations between wp(delta) and wp(2 delta) are checked
through the algebraic duplication formulas.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import expr as _expr
from .algebra import ParamField, ParamScalar
from .polys import LZPoly
from .psi import SpectralCurve


class UnsupportedRelationError(ValueError):
    pass


@dataclass
class LatticeData:
    a: ParamScalar
    e1: ParamScalar
    e2: ParamScalar
    e3: ParamScalar
    g2: ParamScalar
    g3: ParamScalar

    @property
    def field(self) -> ParamField:
        return self.e1.field

    def wp_of_point(self, b: ParamScalar) -> ParamScalar:
        """wp(delta) for the extra point z = b."""
        a = self.a
        return (a + 1 - 3 * b) / (a + 1) * self.e1

    def z_of_wp(self, wp: ParamScalar) -> ParamScalar:
        return (wp - self.e1) / (self.e2 - self.e1)

    def cubic(self, x: ParamScalar) -> ParamScalar:
        """4 x^3 - g2 x - g3, i.e. wp'^2 at wp = x."""
        return 4 * x**3 - self.g2 * x - self.g3


@dataclass
class EllipticPotentialDescription:
    """u(x) = sum m_i(m_i+1) wp(x - w_i) + sum n_k(n_k+1)(wp(x - d_k) + wp(x + d_k)) + shift."""

    half_period_weights: tuple[int, int, int, int]
    point_weights: tuple[int, ...]
    wp_delta: list[ParamScalar]
    shift: ParamScalar | None = None


@dataclass
class NormalizedCurve:
    coeffs: list[ParamScalar]  # w^2 as a polynomial in E, constant first
    scale: ParamScalar  # E = scale * lambda + shift
    shift: ParamScalar

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_poly(self) -> LZPoly:
        """w^2 with E stored in the lambda slot."""
        F = self.coeffs[0].field
        return LZPoly(F, {(i, 0): c for i, c in enumerate(self.coeffs)})


@dataclass
class RelationReport:
    ok: bool
    lhs: str
    residual: ParamScalar
    note: str = ""


def lattice_field(field: ParamField) -> ParamField:
    """Same a/b data as ``field`` with a free lattice scale e1 adjoined."""
    if "e1" in field.names:
        return field
    b = field.modulus if field.modulus is not None else (field.b_mode if field.b_mode == "generic" else None)
    return ParamField(a=field.a_value, b=b, extra=tuple(field.extra) + ("e1",))


def lattice_from_a(field: ParamField, e1=None) -> LatticeData:
    """e_i, g2, g3 for the singular point a; ``e1`` defaults to the free symbol e1."""
    if e1 is None:
        field = lattice_field(field)
        e1 = field.gen("e1")
    else:
        e1 = field(e1)
    a = field.a
    try:
        inv = (a + 1).inverse()
    except ZeroDivisionError:
        raise ValueError("a = -1 is excluded by the lattice parametrisation") from None
    e2 = (a - 2) * inv * e1
    e3 = (1 - 2 * a) * inv * e1
    g2 = -4 * (e1 * e2 + e1 * e3 + e2 * e3)
    g3 = 4 * e1 * e2 * e3
    return LatticeData(a, e1, e2, e3, g2, g3)


def potential_description(chars, lattice: LatticeData, b: list[ParamScalar]) -> EllipticPotentialDescription:
    F = lattice.field
    return EllipticPotentialDescription(
        tuple(mi * (mi + 1) for mi in chars.m),
        tuple(nk * (nk + 1) for nk in chars.n),
        [lattice.wp_of_point(F(bk)) for bk in b],
    )


def curve_to_E(curve: SpectralCurve, lattice: LatticeData) -> NormalizedCurve:
    """Substitute lambda = (E - c)/(e1 - e2), make monic and fix c by sum of roots = 0."""
    F = lattice.field
    nu = [F(c) for c in curve.coeffs]
    d = len(nu) - 1
    s = lattice.e1 - lattice.e2
    c = s * nu[d - 1] / d if d >= 1 else F.zero
    w = [F.zero] * (d + 1)
    neg_c_pows = [F.one]
    for _ in range(d):
        neg_c_pows.append(neg_c_pows[-1] * (-c))
    s_pows = [F.one]
    for _ in range(d):
        s_pows.append(s_pows[-1] * s)
    for i, ci in enumerate(nu):
        if not ci:
            continue
        t = ci * s_pows[d - i]
        for j in range(i + 1):
            w[j] = w[j] + t * comb(i, j) * neg_c_pows[i - j]
    return NormalizedCurve(w, s, c)


def duplicate_wp(p: ParamScalar, g2: ParamScalar, g3: ParamScalar) -> ParamScalar:
    """wp(2u) from wp(u): (p^4 + g2 p^2/2 + 2 g3 p + g2^2/16) / (4p^3 - g2 p - g3)."""
    num = p**4 + g2 * p**2 / 2 + 2 * g3 * p + g2**2 / 16
    return num / (4 * p**3 - g2 * p - g3)


def duplicate_wp_tangent(p: ParamScalar, g2: ParamScalar, g3: ParamScalar) -> ParamScalar:
    """wp(2u) by the tangent construction on y^2 = 4x^3 - g2 x - g3."""
    slope_sq = (6 * p**2 - g2 / 2) ** 2 / (4 * p**3 - g2 * p - g3)
    return slope_sq / 4 - 2 * p


def duplicate_dwp_ratio(p: ParamScalar, g2: ParamScalar, g3: ParamScalar) -> ParamScalar:
    """wp'(2u) / wp'(u) as a rational function of p = wp(u)."""
    num = p**4 + g2 * p**2 / 2 + 2 * g3 * p + g2**2 / 16
    den = 4 * p**3 - g2 * p - g3
    dnum = 4 * p**3 + g2 * p + 2 * g3
    dden = 12 * p**2 - g2
    return (dnum * den - num * dden) / (den * den) / 2


RELATION_FORMS = ("wp(2d)", "wp(d)^2", "dwp(2d)")


def verify_delta_relation(lattice: LatticeData, b: ParamScalar, lhs: str, rhs: str) -> RelationReport:
    """Check an algebraic relation for delta at the point z = b.

    ``lhs`` is one of ``wp(2d)``, ``wp(d)^2`` or ``dwp(2d)``; ``rhs`` is an
    expression in e1, e2, e3, g2, g3, wp (= wp(delta)) and, for ``dwp(2d)``,
    linear in dwp (= wp'(delta)).
    """
    F = lattice.field
    b = F(b)
    p = lattice.wp_of_point(b)
    env = {"e1": lattice.e1, "e2": lattice.e2, "e3": lattice.e3, "g2": lattice.g2, "g3": lattice.g3,
           "wp": p, "a": lattice.a, "b": b}
    lhs = lhs.replace(" ", "")
    if lhs == "wp(2d)":
        value = duplicate_wp(p, lattice.g2, lattice.g3)
        residual = value - _expr.evaluate(rhs, env, F.one)
        return RelationReport(not residual, lhs, residual)
    if lhs == "wp(d)^2":
        residual = p * p - _expr.evaluate(rhs, env, F.one)
        return RelationReport(not residual, lhs, residual)
    if lhs == "dwp(2d)":
        # rhs = k * dwp; wp'(delta) != 0 cancels, so the sign of wp'(delta) does not matter
        parsed = _expr.parse(rhs)
        dwp = _expr.sympy.Symbol("dwp")
        k_expr = _expr.sympy.expand(parsed / dwp)
        if dwp in k_expr.free_symbols:
            raise UnsupportedRelationError("dwp(2d) relation must be linear in dwp")
        k = _expr.evaluate(k_expr, env, F.one)
        dwp_sq = lattice.cubic(p)
        if not dwp_sq:
            return RelationReport(False, lhs, F.zero, "wp'(delta) vanishes: delta is a half-period")
        residual = duplicate_dwp_ratio(p, lattice.g2, lattice.g3) - k
        return RelationReport(not residual, lhs, residual, "checked for both signs of wp'(delta)")
    raise UnsupportedRelationError(f"unsupported relation form {lhs!r}; expected one of {RELATION_FORMS}")
