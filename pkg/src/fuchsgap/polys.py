"""Sparse polynomials in (lambda, z) over a :class:`ParamField`."""
from __future__ import annotations

from typing import Iterable

from .algebra import ParamField, ParamScalar


class LZPoly:
    """Polynomial sum c[i, j] * lambda**i * z**j with ParamScalar coefficients."""

    __slots__ = ("field", "terms")

    def __init__(self, field: ParamField, terms: dict | None = None):
        self.field = field
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    # -- constructors
    @classmethod
    def const(cls, field, c) -> "LZPoly":
        return cls(field, {(0, 0): field(c)})

    @classmethod
    def z(cls, field) -> "LZPoly":
        return cls(field, {(0, 1): field.one})

    @classmethod
    def lam(cls, field) -> "LZPoly":
        return cls(field, {(1, 0): field.one})

    @classmethod
    def from_z_coeffs(cls, field, coeffs: Iterable, lam_power: int = 0) -> "LZPoly":
        return cls(field, {(lam_power, j): field(c) for j, c in enumerate(coeffs)})

    @classmethod
    def product_of_linear(cls, field, roots_with_mult) -> "LZPoly":
        """prod (z - r)**k over the given (root, k) pairs."""
        out = cls.const(field, 1)
        zz = cls.z(field)
        for r, k in roots_with_mult:
            for _ in range(k):
                out = out * (zz - r)
        return out

    # -- arithmetic
    def _coerce(self, other) -> "LZPoly":
        if isinstance(other, LZPoly):
            return other
        return LZPoly.const(self.field, other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t[k] + v if k in t else v
        return LZPoly(self.field, t)

    __radd__ = __add__

    def __neg__(self):
        return LZPoly(self.field, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, LZPoly):
            t: dict = {}
            for (i1, j1), v1 in self.terms.items():
                for (i2, j2), v2 in other.terms.items():
                    k = (i1 + i2, j1 + j2)
                    p = v1 * v2
                    t[k] = t[k] + p if k in t else p
            return LZPoly(self.field, t)
        c = self.field(other)
        return LZPoly(self.field, {k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = LZPoly.const(self.field, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, LZPoly):
            return (self - other).is_zero()
        return (self - self._coerce(other)).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    # -- structure
    def dz(self, k: int = 1) -> "LZPoly":
        out = self
        for _ in range(k):
            out = LZPoly(self.field, {(i, j - 1): v * j for (i, j), v in out.terms.items() if j})
        return out

    def degree_z(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def degree_lambda(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> ParamScalar:
        return self.terms.get((i, j), self.field.zero)

    def lambda_coeff(self, i: int) -> "LZPoly":
        """Coefficient of lambda**i, as a polynomial in z."""
        return LZPoly(self.field, {(0, j): v for (ii, j), v in self.terms.items() if ii == i})

    def z_coeffs(self) -> list[ParamScalar]:
        """Dense z-coefficients of a lambda-free polynomial."""
        if any(i for i, _ in self.terms):
            raise ValueError("polynomial depends on lambda")
        out = [self.field.zero] * (self.degree_z() + 1)
        for (_, j), v in self.terms.items():
            out[j] = v
        return out

    def lambda_coeffs(self) -> list[ParamScalar]:
        """Dense lambda-coefficients of a z-free polynomial."""
        if any(j for _, j in self.terms):
            raise ValueError("polynomial depends on z")
        out = [self.field.zero] * (self.degree_lambda() + 1)
        for (i, _), v in self.terms.items():
            out[i] = v
        return out

    def divmod_z(self, d: "LZPoly") -> tuple["LZPoly", "LZPoly"]:
        """Division in z by a lambda-free polynomial with invertible leading coefficient."""
        dc = d.z_coeffs()
        n = len(dc) - 1
        lead_inv = dc[-1].inverse()
        rem = dict(self.terms)
        quo: dict = {}
        while True:
            top = max((j for (_, j) in rem), default=-1)
            if top < n:
                break
            for (i, j) in [k for k in rem if k[1] == top]:
                c = rem.pop((i, j)) * lead_inv
                shift = j - n
                quo[(i, shift)] = c
                for m in range(n):
                    if dc[m]:
                        key = (i, shift + m)
                        v = -c * dc[m]
                        rem[key] = rem[key] + v if key in rem else v
                        if not rem[key]:
                            del rem[key]
        return LZPoly(self.field, quo), LZPoly(self.field, rem)

    def subs_z(self, value: ParamScalar) -> "LZPoly":
        t: dict = {}
        for (i, j), v in self.terms.items():
            p = v * value**j
            t[i] = t[i] + p if i in t else p
        return LZPoly(self.field, {(i, 0): v for i, v in t.items()})

    def shift_z(self, c) -> "LZPoly":
        """Return f(z + c)."""
        zz = LZPoly.z(self.field) + c
        out = LZPoly(self.field)
        powers = {0: LZPoly.const(self.field, 1)}
        for (i, j), v in self.terms.items():
            if j not in powers:
                powers[j] = zz**j
            out = out + powers[j] * LZPoly(self.field, {(i, 0): v})
        return out

    def map_coeffs(self, fn, field: ParamField | None = None) -> "LZPoly":
        field = field or self.field
        return LZPoly(field, {k: fn(v) for k, v in self.terms.items()})

    def evaluate(self, lam: complex, z: complex, values: dict) -> complex:
        return sum(v.evaluate(values) * lam**i * z**j for (i, j), v in self.terms.items())

    def numeric_coeffs(self, values: dict) -> dict:
        return {k: v.evaluate(values) for k, v in self.terms.items()}

    def as_expr(self):
        import sympy

        lam, z = sympy.symbols("lambda z")
        return sum((v.as_expr() * lam**i * z**j for (i, j), v in self.terms.items()), sympy.Integer(0))

    def __repr__(self):
        return f"LZPoly({self.as_expr()})"
