"""Coefficient tower Q(a)[b]/(p): arithmetic, gcds and linear algebra."""
import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fuchsgap.algebra import (
    ConditionPolynomial,
    InvalidModulusError,
    ModulusNotPrimeError,
    ParamField,
    bareiss,
    determinant,
    matrix,
    nullspace,
    poly_gcd,
    quotient_reduce,
    udivmod,
)

a_sym, b_sym = sympy.symbols("a b")
small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def elem(F, coeffs):
    """sum c_i b^i (c_i rational, possibly times a) as an element of F."""
    x = F.zero
    for i, (c0, c1) in enumerate(coeffs):
        x = x + (F(c0) + F(c1) * F.a) * F.b ** i
    return x


elements = st.lists(st.tuples(small, small), min_size=1, max_size=3)


# -- ring axioms modulo p = b^2 - 2b + a

@settings(max_examples=40, deadline=None)
@given(elements, elements, elements)
def test_ring_axioms(Fmod, x, y, z):
    F = Fmod
    x, y, z = elem(F, x), elem(F, y), elem(F, z)
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + F.zero == x and x * F.one == x
    assert x - x == F.zero


@settings(max_examples=25, deadline=None)
@given(elements)
def test_inverse(Fmod, x):
    x = elem(Fmod, x)
    if x.is_zero():
        return
    try:
        inv = x.inverse()
    except ModulusNotPrimeError:
        return
    assert x * inv == Fmod.one


@settings(max_examples=30, deadline=None)
@given(elements, elements, st.fractions(min_value=2, max_value=30, max_denominator=5))
def test_reduction_is_homomorphism(x, y, a0):
    # evaluate at a numeric a and at a numeric root of p: both sides agree
    p = ConditionPolynomial.from_expr(b_sym**2 - 2 * b_sym + a_sym)
    F = ParamField(b=p)
    X, Y = elem(F, x), elem(F, y)
    root = 1 + sympy.sqrt(1 - sympy.Rational(a0.numerator, a0.denominator))
    vals = {"a": complex(a0), "b": complex(root)}
    assert abs((X * Y).evaluate(vals) - X.evaluate(vals) * Y.evaluate(vals)) < 1e-6 * (1 + abs((X * Y).evaluate(vals)))
    assert abs((X + Y).evaluate(vals) - X.evaluate(vals) - Y.evaluate(vals)) < 1e-8 * (1 + abs(X.evaluate(vals)))


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=1, max_size=4))
def test_multiple_of_modulus_reduces_to_zero(q):
    p = ConditionPolynomial.from_expr(b_sym**2 - a_sym)
    F = ParamField(b=p)
    K = p.K
    qx = [K(sympy.Rational(c.numerator, c.denominator)) for c in q]
    prod = [K.zero] * (len(qx) + 2)
    for i, c in enumerate(qx):
        for j, d in enumerate(p.coeffs):
            prod[i + j] += c * d
    assert quotient_reduce(prod, p, F).is_zero()


def test_quotient_reduce_examples(Fa):
    p = ConditionPolynomial.from_expr(b_sym**2 - a_sym)
    F = ParamField(b=p)
    K = p.K
    assert quotient_reduce([K.zero, K.zero, K.zero, K.one], p, F) == F.a * F.b
    assert quotient_reduce(list(p.coeffs), p, F).is_zero()
    # b^5 mod b^2 - 2b + a against sympy long division
    p2 = ConditionPolynomial.from_expr(b_sym**2 - 2 * b_sym + a_sym)
    F2 = ParamField(b=p2)
    got = quotient_reduce([K.zero] * 5 + [K.one], p2, F2)
    rem = sympy.rem(b_sym**5, b_sym**2 - 2 * b_sym + a_sym, b_sym)
    assert sympy.expand(got.as_expr() - rem) == 0


def test_invalid_moduli():
    with pytest.raises(InvalidModulusError):
        ConditionPolynomial.from_expr((b_sym - 1) ** 2)
    with pytest.raises(InvalidModulusError):
        ConditionPolynomial.from_expr(a_sym + 1)


def test_zero_divisor_detected():
    F = ParamField(b=ConditionPolynomial.from_expr((b_sym - 1) * (b_sym + 1)))
    with pytest.raises(ModulusNotPrimeError):
        (F.b - 1).inverse()


def test_poly_gcd_examples():
    K = ConditionPolynomial.from_expr(b_sym**2 - a_sym).K
    to = lambda e: [K.from_expr(c) if c != 0 else K.zero  # noqa: E731
                    for c in reversed(sympy.Poly(e, b_sym).all_coeffs())]
    assert poly_gcd(to((b_sym - 1) ** 2), to((b_sym - 1) * (b_sym + 1))) == to(b_sym - 1)
    assert poly_gcd(to(b_sym**2 - a_sym), to(b_sym**2 - 2 * b_sym + a_sym)) == [K.one]
    # independent check: the resultant is nonzero for generic a
    assert sympy.resultant(b_sym**2 - a_sym, b_sym**2 - 2 * b_sym + a_sym, b_sym) != 0
    f = to(3 * b_sym**2 - a_sym)
    assert poly_gcd(f, []) == to(b_sym**2 - a_sym / 3)


# -- linear algebra against an independent Fraction row reduction

def naive_rank(rows):
    rows = [list(r) for r in rows]
    rank, ncols = 0, len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


@pytest.mark.parametrize("method", ["pivoting", "bareiss"])
def test_nullspace_random_rational(method):
    rng = random.Random(7)
    F = ParamField(a=Fraction(3))
    for _ in range(30):
        r, c = rng.randint(1, 7), rng.randint(1, 7)
        rank_target = rng.randint(0, min(r, c))
        # low-rank product of random factors so kernels are nontrivial
        A = [[Fraction(rng.randint(-4, 4)) for _ in range(rank_target)] for _ in range(r)]
        B = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(c)] for _ in range(rank_target)]
        rows = [[sum((A[i][k] * B[k][j] for k in range(rank_target)), Fraction(0)) for j in range(c)]
                for i in range(r)]
        basis = nullspace(matrix(F, rows), method=method)
        assert len(basis) == c - naive_rank(rows)
        frac = [[v.to_fraction() for v in vec] for vec in basis]
        for vec in frac:
            assert all(sum(x * y for x, y in zip(row, vec)) == 0 for row in rows)
        if frac:
            assert naive_rank(frac) == len(frac)


def test_nullspace_examples(Fa):
    assert nullspace(matrix(Fa, [[1, 0], [0, 1]])) == []
    (v,) = nullspace(matrix(Fa, [[1, 1], [2, 2]]))
    assert v[0] == -v[1]


def test_nullspace_symbolic(Fa):
    a = Fa.a
    M = [[a, a * a, Fa.one], [Fa.one, a, 1 / a]]
    basis = nullspace(M)
    assert len(basis) == 2
    for vec in basis:
        for row in M:
            assert sum((x * y for x, y in zip(row, vec)), Fa.zero).is_zero()


def cofactor_det(M):
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bareiss_determinant(n, Fmod):
    rng = random.Random(n)
    F = Fmod
    for _ in range(5):
        M = [[F(rng.randint(-3, 3)) + F(rng.randint(-2, 2)) * F.b + F(rng.randint(-1, 1)) * F.a for _ in range(n)]
             for _ in range(n)]
        assert determinant(M) == cofactor_det(M)
    _, pivots, rank = bareiss(matrix(F, [[1, 2], [2, 4]]))
    assert rank == 1


def test_udivmod():
    from fractions import Fraction as Q

    q, r = udivmod([Q(-1), Q(0), Q(1)], [Q(-1), Q(1)])
    assert q == [1, 1] and not r
