"""Canonical term-list serialization.

A value is written as ``{"terms": [...]}`` where each term is
``{"num", "den", "pow_a", "pow_b", "pow_z", "pow_lambda"}`` (zero exponents
omitted, extra symbols such as e1 as ``pow_e1``), sorted by
(pow_lambda, pow_z, pow_b, pow_a) descending.  Values whose coefficients have
a nontrivial denominator in a carry ``den_terms``, a monic polynomial in a
dividing the whole term list.
"""
from __future__ import annotations

from fractions import Fraction

import sympy

from .algebra import ConditionPolynomial, ParamField, ParamScalar
from .polys import LZPoly

_ORDER = ("lambda", "z", "b", "a")


def _as_expr(obj):
    if isinstance(obj, sympy.Basic):
        return obj
    if hasattr(obj, "poly") and isinstance(obj.poly, LZPoly):  # PsiPolynomial
        return obj.poly.as_expr()
    if hasattr(obj, "as_poly") and hasattr(obj, "coeffs"):  # SpectralCurve, NormalizedCurve
        return obj.as_poly().as_expr()
    if isinstance(obj, (LZPoly, ParamScalar, ConditionPolynomial)):
        return obj.as_expr()
    if isinstance(obj, (list, tuple)):  # coefficient list in lambda, constant first
        lam = sympy.Symbol("lambda")
        return sum((c.as_expr() * lam**i for i, c in enumerate(obj)), sympy.Integer(0))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _gens(expr):
    names = {str(s) for s in expr.free_symbols}
    extra = sorted(names - set(_ORDER))
    return [sympy.Symbol(n) for n in _ORDER] + [sympy.Symbol(n) for n in extra]


def _term_list(poly: sympy.Poly, gens) -> list[dict]:
    out = []
    for monom, c in poly.terms():
        c = sympy.Rational(c)
        t = {"num": str(c.p), "den": str(c.q)}
        for g, e in zip(gens, monom):
            if e:
                t[f"pow_{g}"] = int(e)
        out.append(t)
    out.sort(key=lambda t: tuple(-t.get(f"pow_{g}", 0) for g in gens))
    return out


def to_terms(obj) -> dict:
    expr = sympy.together(sympy.expand(_as_expr(obj)))
    num, den = sympy.fraction(expr)
    gens = _gens(expr)
    den_poly = sympy.Poly(den, *gens)
    lc = den_poly.coeffs(order="lex")[0]
    num_poly = sympy.Poly(sympy.expand(num / lc), *gens)
    den_poly = sympy.Poly(sympy.expand(den / lc), *gens)
    out = {"terms": _term_list(num_poly, gens)}
    if den_poly.total_degree() > 0:
        out["den_terms"] = _term_list(den_poly, gens)
    return out


def _terms_expr(terms: list[dict]):
    total = sympy.Integer(0)
    for t in terms:
        c = sympy.Rational(int(t["num"]), int(t.get("den", "1")))
        for key, e in t.items():
            if key.startswith("pow_"):
                name = key[4:]
                c = c * sympy.Symbol(name) ** int(e)
        total += c
    return total


def terms_to_expr(data: dict):
    expr = _terms_expr(data["terms"])
    if "den_terms" in data:
        expr = expr / _terms_expr(data["den_terms"])
    return expr


def from_terms(data: dict, field: ParamField) -> LZPoly:
    """Rebuild a (lambda, z) polynomial over ``field`` from its term list."""
    expr = sympy.expand(_terms_expr(data["terms"]))
    den = field.from_expr(_terms_expr(data["den_terms"])) if "den_terms" in data else field.one
    inv = den.inverse()
    lam, z = sympy.symbols("lambda z")
    poly = sympy.Poly(expr, lam, z)
    terms = {}
    for (i, j), c in poly.terms():
        terms[(i, j)] = field.from_expr(c) * inv
    return LZPoly(field, terms)


def scalar_from_terms(data: dict, field: ParamField) -> ParamScalar:
    return field.from_expr(terms_to_expr(data))


def canonical_equal(x, y) -> bool:
    return to_terms(x) == to_terms(y)


def fraction_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
