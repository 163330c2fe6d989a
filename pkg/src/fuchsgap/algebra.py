"""Exact coefficient arithmetic.

Every computation in the package happens over the tower

    Q  ->  Q(a)  ->  Q(a)[b] / (p(b))

where ``a`` is the third finite singular point (symbolic or a rational
number) and ``b`` is the position of the extra singular point, either a free
transcendental ("generic b") or an algebraic element reduced modulo a
square-free condition polynomial ``p``.

The base field ``Q(gens)`` is a sympy rational function field; everything
above it (the quotient ring, univariate gcds, Bareiss elimination) lives here.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cache
from typing import Iterable, Sequence

from sympy.polys.domains import QQ
from sympy.polys.fields import field as _sympy_field

SYMBOLIC = "symbolic"
GENERIC = "generic"


class AlgebraError(ArithmeticError):
    pass


class InvalidModulusError(AlgebraError):
    pass


class ModulusNotPrimeError(AlgebraError):
    """A nonzero element turned out to be a zero divisor modulo ``p``.

    ``factor`` is the nontrivial monic common factor found by the extended
    Euclidean algorithm; the caller may split the branch along it.
    """

    def __init__(self, factor: "ConditionPolynomial", message: str | None = None):
        self.factor = factor
        super().__init__(message or f"modulus not prime over this branch: factor {factor}")


@cache
def base_field(names: tuple[str, ...]):
    """Return Q(names) as a sympy field, or the QQ domain when ``names`` is empty."""
    if not names:
        return QQ
    K, *_ = _sympy_field(",".join(names), QQ)
    return K


def to_base(K, x):
    if isinstance(x, Fraction):
        x = QQ(x.numerator, x.denominator)
    elif isinstance(x, int):
        x = QQ(x)
    if K is QQ:
        return QQ.convert(x)
    return K(x)


# ---------------------------------------------------------------------------
# dense univariate polynomials over a base field, as lists (constant first)

def utrim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def uadd(f: Sequence, g: Sequence) -> list:
    if len(f) < len(g):
        f, g = g, f
    out = list(f)
    for i, c in enumerate(g):
        out[i] = out[i] + c
    return utrim(out)


def usub(f: Sequence, g: Sequence) -> list:
    return uadd(f, [-c for c in g])


def umul(f: Sequence, g: Sequence) -> list:
    if not f or not g:
        return []
    out = [f[0] * 0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        if x == 0:
            continue
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return utrim(out)


def uscale(f: Sequence, c) -> list:
    return utrim([x * c for x in f])


def udivmod(f: Sequence, g: Sequence) -> tuple[list, list]:
    g = utrim(list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(f)
    utrim(r)
    dg = len(g) - 1
    inv = 1 / g[-1]
    q = [g[-1] * 0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        c = r[-1] * inv
        k = len(r) - 1 - dg
        q[k] = c
        for i in range(dg + 1):
            r[k + i] = r[k + i] - c * g[i]
        r.pop()
        utrim(r)
    return utrim(q), r


def umonic(f: Sequence) -> list:
    f = utrim(list(f))
    if not f:
        return f
    inv = 1 / f[-1]
    return [c * inv for c in f]


def uderiv(f: Sequence) -> list:
    return utrim([c * i for i, c in enumerate(f)][1:])


def ugcd(f: Sequence, g: Sequence) -> list:
    f, g = utrim(list(f)), utrim(list(g))
    while g:
        f, g = g, udivmod(f, g)[1]
    return umonic(f)


def uxgcd(f: Sequence, g: Sequence) -> tuple[list, list, list]:
    """Return (d, s, t) with s*f + t*g = d, d monic."""
    nz = next(c for c in list(f) + list(g) if c != 0)
    one = nz / nz
    r0, r1 = utrim(list(f)), utrim(list(g))
    s0, s1 = [one], []
    t0, t1 = [], [one]
    while r1:
        q, r = udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, usub(s0, umul(q, s1))
        t0, t1 = t1, usub(t0, umul(q, t1))
    inv = 1 / r0[-1]
    return [c * inv for c in r0], uscale(s0, inv), uscale(t0, inv)


def usquarefree(f: Sequence) -> list[tuple[list, int]]:
    """Yun's square-free decomposition (characteristic zero)."""
    f = umonic(f)
    if len(f) <= 1:
        return []
    out = []
    df = uderiv(f)
    a0 = ugcd(f, df)
    b = udivmod(f, a0)[0]
    c = udivmod(df, a0)[0]
    d = usub(c, uderiv(b))
    i = 1
    while len(b) > 1:
        a = ugcd(b, d)
        if len(a) > 1:
            out.append((a, i))
        b = udivmod(b, a)[0]
        c = udivmod(d, a)[0]
        d = usub(c, uderiv(b))
        i += 1
    return out


def uresultant(f: Sequence, g: Sequence):
    """Resultant via the Euclidean remainder sequence (field coefficients)."""
    f, g = utrim(list(f)), utrim(list(g))
    if not f or not g:
        return 0
    res = f[-1] / f[-1]
    while len(g) > 1:
        df, dg = len(f) - 1, len(g) - 1
        r = udivmod(f, g)[1]
        if not r:
            return res * 0
        dr = len(r) - 1
        if df % 2 == 1 and dg % 2 == 1:
            res = -res
        res = res * g[-1] ** (df - dr)
        f, g = g, r
    return res * g[0] ** (len(f) - 1)


# ---------------------------------------------------------------------------

class ConditionPolynomial:
    """Square-free polynomial in ``b`` over Q(a) that pins down a branch."""

    def __init__(self, coeffs: Iterable, K=None, tag: str = "user-supplied", check: bool = True):
        coeffs = list(coeffs)
        if K is None:
            K = base_field(("a",))
        self.K = K
        self.coeffs = tuple(utrim([to_base(K, c) for c in coeffs]))
        self.tag = tag
        if len(self.coeffs) < 2:
            raise InvalidModulusError("condition polynomial must have positive degree in b")
        if check:
            g = ugcd(self.coeffs, uderiv(self.coeffs))
            if len(g) > 1:
                raise InvalidModulusError("condition polynomial is not square-free")

    @classmethod
    def from_expr(cls, expr, K=None, tag: str = "user-supplied", check: bool = True) -> "ConditionPolynomial":
        """Parse a polynomial in ``b`` whose coefficients are rational in ``a`` (and extras)."""
        import sympy

        expr = sympy.sympify(expr) if isinstance(expr, str) else expr
        if K is None:
            names = sorted(str(s) for s in expr.free_symbols if str(s) != "b")
            K = base_field(tuple(names)) if names else base_field(("a",))
        poly = sympy.Poly(sympy.together(expr), sympy.Symbol("b"))
        coeffs = []
        for c in reversed(poly.all_coeffs()):
            if K is QQ:
                r = sympy.Rational(c)
                coeffs.append(QQ(int(r.p), int(r.q)))
            else:
                coeffs.append(K.from_expr(c) if c != 0 else K.zero)
        return cls(coeffs, K, tag, check)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def monic(self) -> "ConditionPolynomial":
        return ConditionPolynomial(umonic(self.coeffs), self.K, self.tag, check=False)

    def __eq__(self, other):
        if not isinstance(other, ConditionPolynomial):
            return NotImplemented
        return self.K == other.K and umonic(self.coeffs) == umonic(other.coeffs)

    def __hash__(self):
        return hash(tuple(umonic(self.coeffs)))

    def as_expr(self):
        import sympy

        b = sympy.Symbol("b")
        return sympy.expand(sum(_base_expr(c) * b**i for i, c in enumerate(self.coeffs)))

    def __repr__(self):
        return f"ConditionPolynomial({self.as_expr()}, tag={self.tag!r})"

    __str__ = lambda self: str(self.as_expr())


def _base_expr(c):
    if hasattr(c, "as_expr"):
        return c.as_expr()
    import sympy

    return sympy.Rational(int(c.numerator), int(c.denominator))


class ParamField:
    """The coefficient ring of a computation.

    ``a`` is :data:`SYMBOLIC` or a rational number.  ``b`` is :data:`GENERIC`
    (a free symbol), a :class:`ConditionPolynomial` (algebraic, reduced modulo
    the polynomial) or ``None`` when no extra point is needed.  ``extra`` names
    further free symbols such as the lattice scale ``e1``.
    """

    def __init__(self, a=SYMBOLIC, b=None, extra: Sequence[str] = ()):
        names = []
        if a == SYMBOLIC:
            names.append("a")
        elif a is not None:
            a = Fraction(a)
        if isinstance(b, str) and b == GENERIC:
            names.append("b")
        names.extend(extra)
        self.names = tuple(names)
        self.K = base_field(self.names)
        self.a_value = a
        self.extra = tuple(extra)
        self.modulus: ConditionPolynomial | None = None
        if isinstance(b, ConditionPolynomial):
            if b.K is not self.K:
                b = ConditionPolynomial([convert_base(c, b.K, self.K, a_value=self.a_value) for c in b.coeffs],
                                        self.K, b.tag, check=False)
            self.modulus = b
            self._monic = umonic(b.coeffs)
            self._deg = b.degree
        elif b is not None and b != GENERIC:
            raise ValueError(f"unsupported b mode {b!r}")
        self.b_mode = "algebraic" if self.modulus is not None else ("generic" if b == GENERIC else None)

    # -- identity
    def _key(self):
        mod = tuple(self._monic) if self.modulus is not None else None
        return (self.names, self.a_value, mod)

    def __eq__(self, other):
        return isinstance(other, ParamField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        b = self.modulus if self.modulus is not None else self.b_mode
        return f"ParamField(a={self.a_value!r}, b={b}, extra={self.extra})"

    # -- constructors
    def __call__(self, x) -> "ParamScalar":
        if isinstance(x, ParamScalar):
            if x.field == self:
                return x
            return self.convert(x)
        return ParamScalar(self, (to_base(self.K, x),))

    def from_base(self, x) -> "ParamScalar":
        return ParamScalar(self, (x,))

    @property
    def zero(self) -> "ParamScalar":
        return ParamScalar(self, ())

    @property
    def one(self) -> "ParamScalar":
        return self(1)

    def gen(self, name: str) -> "ParamScalar":
        if name == "a" and self.a_value != SYMBOLIC:
            if self.a_value is None:
                raise KeyError("this field has no value for a")
            return self(self.a_value)
        if name == "b" and self.modulus is not None:
            return ParamScalar(self, (self.K.zero, self.K.one))
        if name not in self.names:
            raise KeyError(f"{name} is not a generator of {self!r}")
        return ParamScalar(self, (self.K.gens[self.names.index(name)],))

    @property
    def a(self) -> "ParamScalar":
        return self.gen("a")

    @property
    def b(self) -> "ParamScalar":
        return self.gen("b")

    def from_expr(self, expr) -> "ParamScalar":
        """Build an element from a sympy expression or string in a, b and extras."""
        import sympy

        expr = sympy.sympify(expr) if isinstance(expr, str) else expr
        num, den = sympy.fraction(sympy.together(expr))
        return self._from_poly_expr(num) / self._from_poly_expr(den)

    def _from_poly_expr(self, expr) -> "ParamScalar":
        import sympy

        syms = sorted(expr.free_symbols, key=str)
        if not syms:
            return self(Fraction(str(sympy.Rational(expr))))
        poly = sympy.Poly(expr, *syms)
        gens = [self.gen(str(s)) for s in syms]
        out = self.zero
        for monom, c in poly.terms():
            term = self(Fraction(int(c.p), int(c.q)))
            for g, e in zip(gens, monom):
                if e:
                    term = term * g**e
            out = out + term
        return out

    def convert(self, x: "ParamScalar") -> "ParamScalar":
        """Map an element of another field into this one (lifting or specialising ``a``)."""
        src = x.field
        coeffs = [convert_base(c, src.K, self.K, a_value=self.a_value) for c in x.coeffs]
        if src.modulus is not None:
            return sum((self.from_base(c) * self.b**i for i, c in enumerate(coeffs)), self.zero)
        return self.from_base(coeffs[0]) if coeffs else self.zero

    # -- internal reduction
    def _reduce(self, c: list) -> tuple:
        utrim(c)
        if self.modulus is None:
            if len(c) > 1:
                raise AlgebraError("b-polynomial in a field without b")
            return tuple(c)
        d, p = self._deg, self._monic
        for k in range(len(c) - 1, d - 1, -1):
            t = c[k]
            if t == 0:
                continue
            for i in range(d):
                if p[i] != 0:
                    c[k - d + i] = c[k - d + i] - t * p[i]
            c[k] = self.K.zero
        return tuple(utrim(c))


def convert_base(c, K_src, K_dst, a_value=SYMBOLIC):
    if K_src is K_dst:
        return c
    if K_src is QQ:
        return to_base(K_dst, c)
    expr = c.as_expr()
    if a_value != SYMBOLIC and "a" not in getattr(K_dst, "symbols", ()) and any(str(s) == "a" for s in expr.free_symbols):
        import sympy

        expr = expr.subs(sympy.Symbol("a"), sympy.Rational(a_value.numerator, a_value.denominator))
    if K_dst is QQ:
        import sympy

        r = sympy.Rational(expr)
        return QQ(int(r.p), int(r.q))
    return K_dst.from_expr(expr)


class ParamScalar:
    """Immutable element of Q(a)[b]/(p), stored as b-coefficients (constant first)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ParamField, coeffs: Sequence):
        self.field = field
        self.coeffs = field._reduce(list(coeffs))

    # -- coercion
    def _lift(self, other) -> "ParamScalar | None":
        if isinstance(other, ParamScalar):
            if other.field is self.field or other.field == self.field:
                return other
            raise AlgebraError(f"mixed fields {self.field!r} and {other.field!r}")
        if isinstance(other, (int, Fraction)) or type(other).__name__ == "mpq":
            return self.field(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ParamScalar(self.field, uadd(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return ParamScalar(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ParamScalar(self.field, usub(self.coeffs, o.coeffs))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if len(o.coeffs) == 1:
            return ParamScalar(self.field, [c * o.coeffs[0] for c in self.coeffs])
        if len(self.coeffs) == 1:
            return ParamScalar(self.field, [self.coeffs[0] * c for c in o.coeffs])
        return ParamScalar(self.field, umul(self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "ParamScalar":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of zero")
        if len(self.coeffs) == 1:
            return ParamScalar(self.field, (1 / self.coeffs[0],))
        mod = self.field.modulus
        d, s, _ = uxgcd(self.coeffs, mod.coeffs)
        if len(d) > 1:
            raise ModulusNotPrimeError(ConditionPolynomial(d, self.field.K, "split", check=False))
        return ParamScalar(self.field, s)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    # -- comparison
    def __eq__(self, other):
        try:
            o = self._lift(other)
        except AlgebraError:
            return False
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        """True when the element is a plain rational number."""
        if len(self.coeffs) > 1:
            return False
        if not self.coeffs:
            return True
        c = self.coeffs[0]
        return self.field.K is QQ or (c.numer.is_ground and c.denom.is_ground)

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        if not self.coeffs:
            return Fraction(0)
        c = self.coeffs[0]
        if self.field.K is not QQ:
            c = c.numer.LC / c.denom.LC
        return Fraction(int(c.numerator), int(c.denominator))

    # -- views
    def as_expr(self):
        import sympy

        b = sympy.Symbol("b")
        return sum((_base_expr(c) * b**i for i, c in enumerate(self.coeffs)), sympy.Integer(0))

    def __repr__(self):
        return str(self.as_expr())

    def evaluate(self, values: dict) -> complex:
        """Numerical value given numbers for every symbol (``a``, ``b``, extras)."""
        field = self.field
        total = 0j
        bval = complex(values["b"]) if field.modulus is not None else None
        for i, c in enumerate(self.coeffs):
            v = _eval_base(c, field, values)
            total += v * (bval**i if i else 1)
        return total


def _eval_base(c, field: ParamField, values: dict) -> complex:
    if field.K is QQ:
        return complex(float(c.numerator) / float(c.denominator))
    pts = [complex(values[n]) for n in field.names]

    def ev(poly):
        s = 0j
        for monom, coef in poly.terms():
            t = complex(float(coef.numerator) / float(coef.denominator))
            for x, e in zip(pts, monom):
                if e:
                    t *= x**e
            s += t
        return s

    return ev(c.numer) / ev(c.denom)


# ---------------------------------------------------------------------------
# b-polynomials over Q(a) and the operations exposed on them

def quotient_reduce(x: Sequence, p: ConditionPolynomial, field: ParamField | None = None) -> ParamScalar:
    """Reduce the b-polynomial ``x`` (coefficients in Q(a), constant first) modulo ``p``."""
    if not p.coeffs or p.coeffs[-1] == 0:
        raise InvalidModulusError("leading coefficient of the modulus vanishes")
    if field is None:
        field = field_for_modulus(p)
    return ParamScalar(field, [to_base(field.K, c) for c in x])


def field_for_modulus(p: ConditionPolynomial) -> ParamField:
    names = [str(s) for s in getattr(p.K, "symbols", ())]
    a = SYMBOLIC if "a" in names else None
    return ParamField(a=a, b=p, extra=[n for n in names if n != "a"])


def poly_gcd(f: Sequence, g: Sequence) -> list:
    """Monic gcd of two b-polynomials over Q(a)."""
    f, g = utrim(list(f)), utrim(list(g))
    if not f and not g:
        raise ValueError("gcd(0, 0) is undefined")
    return ugcd(f, g)


def squarefree_part(f: Sequence) -> list:
    f = utrim(list(f))
    return udivmod(f, ugcd(f, uderiv(f)))[0]


# ---------------------------------------------------------------------------
# linear algebra

def bareiss(M: list[list[ParamScalar]]) -> tuple[list[list[ParamScalar]], list[int], int]:
    """Fraction-free row echelon form.

    Returns (E, pivot_columns, sign) where ``sign`` tracks row swaps.  Every
    pivot is inverted at the next step, so a zero-divisor pivot raises
    :class:`ModulusNotPrimeError` instead of silently hiding a zero.
    """
    E = [list(r) for r in M]
    rows = len(E)
    cols = len(E[0]) if rows else 0
    pivots: list[int] = []
    sign = 1
    prev_inv = None
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if E[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            E[r], E[piv] = E[piv], E[r]
            sign = -sign
        pr = E[r][c]
        for i in range(r + 1, rows):
            f = E[i][c]
            row = E[i]
            for j in range(c + 1, cols):
                v = pr * row[j] - f * E[r][j]
                row[j] = v if prev_inv is None else v * prev_inv
            row[c] = pr.field.zero
        # rows above r keep their values; previous pivot divides exactly
        prev_inv = pr.inverse()
        pivots.append(c)
        r += 1
    return E, pivots, sign


def determinant(M: list[list[ParamScalar]]) -> ParamScalar:
    n = len(M)
    if n == 0:
        raise ValueError("empty matrix")
    E, pivots, sign = bareiss(M)
    if len(pivots) < n:
        return M[0][0].field.zero
    return E[n - 1][n - 1] * sign


def _size(x: ParamScalar) -> tuple[int, int]:
    total = 0
    for c in x.coeffs:
        if hasattr(c, "numer"):
            total += len(c.numer.terms()) + len(c.denom.terms())
        else:
            total += 1
    return (len(x.coeffs), total)


def _gauss_jordan_kernel(M: list[list[ParamScalar]]) -> list[list[ParamScalar]]:
    """Kernel by Gauss-Jordan elimination choosing the simplest available pivot.

    Entries of the Psi systems are mostly rational numbers or low-degree
    elements; picking those first keeps intermediate expressions small, which
    matters much more than fraction-freeness once b is reduced modulo p_b.
    """
    field = M[0][0].field
    rows = [dict((j, x) for j, x in enumerate(r) if x) for r in M]
    rows = [r for r in rows if r]
    cols = len(M[0])
    pivot_rows: dict[int, dict] = {}  # pivot column -> normalised row
    while rows:
        best = None
        for ri, r in enumerate(rows):
            for cj, x in r.items():
                s = (_size(x), len(r))
                if best is None or s < best[0]:
                    best = (s, ri, cj)
        _, ri, pc = best
        row = rows.pop(ri)
        inv = row[pc].inverse()
        row = {j: x * inv for j, x in row.items()}
        row[pc] = field.one

        def eliminate(r):
            f = r.pop(pc, None)
            if not f:
                return r
            for j, x in row.items():
                if j == pc:
                    continue
                v = r.get(j)
                nv = v - f * x if v is not None else -(f * x)
                if nv:
                    r[j] = nv
                else:
                    r.pop(j, None)
            return r

        rows = [r for r in (eliminate(r) for r in rows) if r]
        for k in list(pivot_rows):
            pivot_rows[k] = eliminate(pivot_rows[k])
            pivot_rows[k][k] = field.one
        pivot_rows[pc] = row
    free = [c for c in range(cols) if c not in pivot_rows]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for pc, row in pivot_rows.items():
            x = row.get(fc)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def nullspace(M: list[list[ParamScalar]], check: bool = True, method: str = "pivoting") -> list[list[ParamScalar]]:
    """Kernel basis of ``M`` (one vector per free column, free entry 1).

    ``method`` is ``"pivoting"`` (Gauss-Jordan with simplest-pivot choice) or
    ``"bareiss"`` (fraction-free, column order).  Both invert every pivot, so
    a zero-divisor pivot modulo p_b raises :class:`ModulusNotPrimeError`.
    """
    if not M:
        return []
    field = M[0][0].field
    cols = len(M[0])
    if method == "pivoting":
        basis = _gauss_jordan_kernel(M)
        if check:
            _check_kernel(M, basis)
        return basis
    if method != "bareiss":
        raise ValueError(f"unknown method {method!r}")
    E, pivots, _ = bareiss(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [field.zero] * cols
        v[fc] = field.one
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = field.zero
            for j in range(pc + 1, cols):
                if v[j] and E[r][j]:
                    s = s + E[r][j] * v[j]
            v[pc] = -s / E[r][pc]
        basis.append(v)
    if check:
        _check_kernel(M, basis)
    return basis


def _check_kernel(M, basis):
    field = M[0][0].field
    for v in basis:
        for row in M:
            acc = field.zero
            for x, y in zip(row, v):
                if x and y:
                    acc = acc + x * y
            if acc:
                raise AlgebraError("nullspace vector failed exact verification")


def matrix(field: ParamField, rows: Iterable[Iterable]) -> list[list[ParamScalar]]:
    return [[field(x) for x in r] for r in rows]
