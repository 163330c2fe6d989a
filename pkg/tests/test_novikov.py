"""z-side recursion: I_0, the operator L, residue tuning and the minimal relation."""
import random
from fractions import Fraction

import pytest

from fuchsgap.algebra import ConditionPolynomial, ParamField
from fuchsgap.false_point import enumerate_candidates, proportionality_factor, sextic_condition
from fuchsgap.fuchsian import Characteristics, SingularConfig, build_equation, genus_bounds
from fuchsgap.novikov import (
    NovikovInconsistencyError,
    apply_L,
    build_I0,
    check_relation,
    find_novikov_relation,
    tune_b_residue,
)
from fuchsgap.rational import RationalFunctionZ


def eq_for(m, n=(), a="symbolic", branch=None):
    chars = Characteristics(m, n)
    return build_equation(chars, SingularConfig.standard(chars, a=a, branch=branch))


def test_I0_examples():
    eq = eq_for((1, 0, 0, 0))
    F = eq.field
    assert build_I0(eq) == RationalFunctionZ.polynomial(F, [0, Fraction(1, 2)], eq.points())
    eq = eq_for((0, 0, 0, 0), (1,))
    F = eq.field
    a, b = F.a, F.b
    I0 = build_I0(eq)
    assert I0.coefficient("b1", 2) == 2 * b * (b - 1) * (b - a)
    assert I0.coefficient("b1", 1) == 3 * b * b - 2 * (a + 1) * b + a
    assert not any(I0.poly)


def test_I0_double_pole_at_extra_point():
    rng = random.Random(3)
    for _ in range(5):
        m = tuple(rng.randint(0, 2) for _ in range(4))
        n1 = rng.randint(1, 3)
        eq = eq_for(m, (n1,), a=Fraction(rng.randint(2, 9)))
        I0 = build_I0(eq)
        b = eq.b[0]
        a = eq.a
        assert I0.pole_order("b1") == 2
        assert I0.coefficient("b1", 2) == n1 * (n1 + 1) * b * (b - 1) * (b - a)


def test_L_of_one():
    eq = eq_for((1, 1, 0, 0), (1,))
    one = RationalFunctionZ.constant(eq.field, 1, eq.points())
    assert apply_L(eq, one) == build_I0(eq) * (-2)


def test_I1_pole_order_n1():
    eq = eq_for((0, 0, 0, 0), (1,))
    I0 = build_I0(eq)
    assert apply_L(eq, I0, I0).pole_order("b1") == 2


def test_pole_order_growth_n2():
    # alpha = 1, n1 = 2 in the displayed asymptotics of L(I) near z = b
    eq = eq_for((0, 1, 0, 0), (2,), a=Fraction(5))
    I0 = build_I0(eq)
    I1 = apply_L(eq, I0, I0)
    b, a = eq.b[0], eq.a
    A, B = I0.coefficient("b1", 2), I0.coefficient("b1", 1)
    cubic = b * (b - 1) * (b - a)
    assert I1.pole_order("b1") == 4
    assert I1.coefficient("b1", 4) == -12 * cubic * A
    assert I1.coefficient("b1", 3) == -5 * (3 * b * b - 2 * (a + 1) * b + a) * A - 14 * cubic * B


@pytest.mark.parametrize("m", [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0)])
def test_residue_condition_matches_sextic(m):
    cond = tune_b_residue(eq_for(m, (1,)), check_sextic=False)
    assert proportionality_factor(cond, sextic_condition(m).poly) is not None


@pytest.mark.parametrize("m,factor,g", [
    ((0, 0, 0, 0), "b**2 - a", 1),
    ((1, 0, 0, 0), "3*b**2 - 2*(a+1)*b + a", 2),
    ((1, 0, 0, 0), "3*b**4 - 4*(a+1)*b**3 + 6*a*b**2 - a**2", 1),
])
def test_novikov_genus(m, factor, g):
    eq = eq_for(m, (1,), branch=ConditionPolynomial.from_expr(factor))
    rel = find_novikov_relation(eq)
    assert rel.genus == g
    assert check_relation(rel)


def valid_random_equations(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        m = tuple(rng.randint(0, 2) for _ in range(4))
        av = Fraction(rng.choice([3, 5, 7, 9, -3]), rng.choice([1, 2]))
        if rng.random() < 0.4:
            out.append(eq_for(m, a=av))
            continue
        branches = [br for br in enumerate_candidates(m, av)
                    if br.factor.degree <= 2 and not any(exact and v in (0, 1, av) for v, exact in br.roots)]
        if not branches:
            continue
        out.append(eq_for(m, (1,), a=av, branch=rng.choice(branches).factor))
    return out


def test_no_logarithm_on_valid_inputs():
    for eq in valid_random_equations(8, seed=17):
        I0 = build_I0(eq)
        f = I0
        for _ in range(max(1, eq.chars.N - 1)):
            f = apply_L(eq, f, I0)  # raises LogarithmicAntiderivativeError on a residue


def test_integration_constant_invariance():
    changed = 0
    for eq in valid_random_equations(5, seed=23) + [eq_for((1, 0, 0, 0), (1,),
                                                         branch=ConditionPolynomial.from_expr("3*b**2-2*(a+1)*b+a"))]:
        r0 = find_novikov_relation(eq)
        r1 = find_novikov_relation(eq, constant=1)
        assert r0.genus == r1.genus
        lo, hi = genus_bounds(eq.chars)[:2]
        assert r0.genus == 0 or lo <= r0.genus <= max(lo, hi)
        changed += (r0.c, r0.d) != (r1.c, r1.d)
    assert changed


def test_not_finite_gap_off_branch():
    F = ParamField(a=Fraction(4))
    chars = Characteristics((0, 0, 0, 0), (1,))
    eq = build_equation(chars, SingularConfig(F, [F(Fraction(137, 100))]))
    with pytest.raises((NovikovInconsistencyError, ArithmeticError)):
        find_novikov_relation(eq)
