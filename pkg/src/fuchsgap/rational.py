"""Rational functions of z in partial-fraction form.

A :class:`RationalFunctionZ` is a polynomial part plus, for every finite pole,
the list of its principal-part coefficients ``[r1, r2, ...]`` standing for
``r1/(z-c) + r2/(z-c)**2 + ...``.  Poles are labelled (``"0"``, ``"1"``,
``"a"``, ``"b1"``, ...) and their locations are carried alongside, so the
representation is unique once trailing zeros are dropped.

Products are formed from Laurent expansions at each pole and at infinity;
this keeps every operation inside the partial-fraction basis without ever
building a common denominator.
"""
from __future__ import annotations

from math import comb
from typing import Mapping

from .algebra import AlgebraError, ParamField, ParamScalar


class LogarithmicAntiderivativeError(AlgebraError):
    """The integrand has a nonzero residue, so its antiderivative is not rational."""

    def __init__(self, label: str, residue: ParamScalar):
        self.label = label
        self.residue = residue
        super().__init__(f"logarithmic antiderivative: residue {residue} at z = {label}")


def _trim(lst: list) -> list:
    while lst and not lst[-1]:
        lst.pop()
    return lst


class RationalFunctionZ:
    __slots__ = ("field", "poly", "poles", "points")

    def __init__(self, field: ParamField, poly=(), poles: Mapping | None = None,
                 points: Mapping[str, ParamScalar] | None = None):
        self.field = field
        self.poly = tuple(_trim([field(c) for c in poly]))
        self.points = dict(points or {})
        cleaned = {}
        for label, coeffs in (poles or {}).items():
            c = _trim([field(x) for x in coeffs])
            if c:
                if label not in self.points:
                    raise KeyError(f"pole {label!r} has no location")
                cleaned[label] = tuple(c)
        self.poles = cleaned

    # -- constructors
    @classmethod
    def zero(cls, field, points=None):
        return cls(field, (), {}, points)

    @classmethod
    def constant(cls, field, c, points=None):
        return cls(field, (c,), {}, points)

    @classmethod
    def polynomial(cls, field, coeffs, points=None):
        return cls(field, coeffs, {}, points)

    # -- helpers
    def _with(self, poly, poles, other: "RationalFunctionZ | None" = None) -> "RationalFunctionZ":
        pts = dict(self.points)
        if other is not None:
            pts.update(other.points)
        return RationalFunctionZ(self.field, poly, poles, pts)

    def pole_order(self, label: str) -> int:
        return len(self.poles.get(label, ()))

    def coefficient(self, label: str, order: int) -> ParamScalar:
        c = self.poles.get(label, ())
        return c[order - 1] if order <= len(c) else self.field.zero

    def residue(self, label: str) -> ParamScalar:
        return self.coefficient(label, 1)

    def degree(self) -> int:
        return len(self.poly) - 1

    def is_zero(self) -> bool:
        return not self.poly and not self.poles

    def is_constant(self) -> bool:
        return not self.poles and len(self.poly) <= 1

    # -- linear structure
    def __add__(self, other):
        if not isinstance(other, RationalFunctionZ):
            other = RationalFunctionZ.constant(self.field, other)
        n = max(len(self.poly), len(other.poly))
        z = self.field.zero
        poly = [(self.poly[i] if i < len(self.poly) else z) + (other.poly[i] if i < len(other.poly) else z)
                for i in range(n)]
        poles = {}
        for label in set(self.poles) | set(other.poles):
            a, b = self.poles.get(label, ()), other.poles.get(label, ())
            m = max(len(a), len(b))
            poles[label] = [(a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(m)]
        return self._with(poly, poles, other)

    __radd__ = __add__

    def __neg__(self):
        return self * self.field(-1)

    def __sub__(self, other):
        if not isinstance(other, RationalFunctionZ):
            other = RationalFunctionZ.constant(self.field, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "RationalFunctionZ":
        c = self.field(c)
        return self._with([x * c for x in self.poly], {k: [x * c for x in v] for k, v in self.poles.items()})

    def __mul__(self, other):
        if isinstance(other, RationalFunctionZ):
            return self._product(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionZ):
            other = RationalFunctionZ.constant(self.field, other)
        return (self - other).is_zero()

    __hash__ = None

    # -- calculus
    def derivative(self) -> "RationalFunctionZ":
        poly = [self.poly[i] * i for i in range(1, len(self.poly))]
        poles = {}
        for label, c in self.poles.items():
            d = [self.field.zero] * (len(c) + 1)
            for k, r in enumerate(c, start=1):
                d[k] = r * (-k)
            poles[label] = d
        return self._with(poly, poles)

    def antiderivative(self, constant=0) -> "RationalFunctionZ":
        """Rational antiderivative; a nonzero residue raises LogarithmicAntiderivativeError."""
        poly = [self.field(constant)] + [c / (i + 1) for i, c in enumerate(self.poly)]
        poles = {}
        for label, c in self.poles.items():
            if c[0]:
                raise LogarithmicAntiderivativeError(label, c[0])
            poles[label] = [c[k] / (-k) for k in range(1, len(c))]
        return self._with(poly, poles)

    # -- expansions
    def laurent(self, label: str, upto: int) -> dict[int, ParamScalar]:
        """Coefficients of (z-c)**k for -order <= k <= upto at the pole ``label``."""
        c = self.points[label]
        F = self.field
        out: dict[int, ParamScalar] = {}

        def put(k, v):
            if k <= upto and v:
                out[k] = out[k] + v if k in out else v

        for k, r in enumerate(self.poles.get(label, ()), start=1):
            put(-k, r)
        # polynomial part, Taylor-shifted to c
        for i, p in enumerate(self.poly):
            if not p:
                continue
            for j in range(min(i, upto) + 1):
                put(j, p * comb(i, j) * c ** (i - j))
        # other poles: (t + (c-d))**-k = sum_j binom(-k, j) (c-d)**(-k-j) t**j
        for other, coeffs in self.poles.items():
            if other == label:
                continue
            inv = (c - self.points[other]).inverse()
            for k, r in enumerate(coeffs, start=1):
                if not r:
                    continue
                base = r * inv**k
                for j in range(upto + 1):
                    put(j, base * ((-1) ** j * comb(k + j - 1, j)) * inv**j)
        return out

    def at_infinity(self, upto: int) -> dict[int, ParamScalar]:
        """Coefficients of w**k (w = 1/z) for -degree <= k <= upto."""
        out: dict[int, ParamScalar] = {}

        def put(k, v):
            if k <= upto and v:
                out[k] = out[k] + v if k in out else v

        for i, p in enumerate(self.poly):
            put(-i, p)
        # (z-d)**-k = w**k (1 - d w)**-k
        for label, coeffs in self.poles.items():
            d = self.points[label]
            for k, r in enumerate(coeffs, start=1):
                for j in range(0, upto - k + 1):
                    put(k + j, r * comb(k + j - 1, j) * d**j)
        return out

    def _product(self, other: "RationalFunctionZ") -> "RationalFunctionZ":
        F = self.field
        pts = dict(self.points)
        pts.update(other.points)
        a = RationalFunctionZ(F, self.poly, self.poles, pts)
        b = RationalFunctionZ(F, other.poly, other.poles, pts)
        poles = {}
        for label in set(a.poles) | set(b.poles):
            oa, ob = a.pole_order(label), b.pole_order(label)
            la, lb = a.laurent(label, ob), b.laurent(label, oa)
            coeffs = [F.zero] * (oa + ob)
            for i, x in la.items():
                for j, y in lb.items():
                    if -(oa + ob) <= i + j <= -1:
                        coeffs[-(i + j) - 1] = coeffs[-(i + j) - 1] + x * y
            poles[label] = coeffs
        da, db = max(a.degree(), 0), max(b.degree(), 0)
        ia, ib = a.at_infinity(db), b.at_infinity(da)
        poly = [F.zero] * (da + db + 1)
        for i, x in ia.items():
            for j, y in ib.items():
                if -(da + db) <= i + j <= 0:
                    poly[-(i + j)] = poly[-(i + j)] + x * y
        return RationalFunctionZ(F, poly, poles, pts)

    def mul_poly(self, coeffs) -> "RationalFunctionZ":
        return self._product(RationalFunctionZ.polynomial(self.field, coeffs))

    # -- views
    def coefficient_vector(self) -> dict:
        """Coordinates in the basis z**i, (z-c)**-k."""
        v = {("poly", i): c for i, c in enumerate(self.poly) if c}
        for label, coeffs in self.poles.items():
            v.update({(label, k): c for k, c in enumerate(coeffs, start=1) if c})
        return v

    def evaluate(self, z: complex, values: dict) -> complex:
        s = sum(c.evaluate(values) * z**i for i, c in enumerate(self.poly))
        for label, coeffs in self.poles.items():
            d = self.points[label].evaluate(values)
            s += sum(c.evaluate(values) * (z - d) ** (-k) for k, c in enumerate(coeffs, start=1))
        return s

    def as_expr(self):
        import sympy

        z = sympy.Symbol("z")
        e = sum((c.as_expr() * z**i for i, c in enumerate(self.poly)), sympy.Integer(0))
        for label, coeffs in self.poles.items():
            d = self.points[label].as_expr()
            e += sum(c.as_expr() / (z - d) ** k for k, c in enumerate(coeffs, start=1))
        return e

    def __repr__(self):
        return f"RationalFunctionZ({self.as_expr()})"
