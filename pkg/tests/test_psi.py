"""Product equation, polynomial solution Psi and the spectral curve."""
from fractions import Fraction

import pytest
import sympy

from fuchsgap.algebra import ConditionPolynomial, ParamField
from fuchsgap.fuchsian import Characteristics, SingularConfig, build_equation
from fuchsgap.polys import LZPoly
from fuchsgap.psi import NotFiniteGapError, build_product_ode, solve_psi, spectral_curve, verify_psi

a, b, z, lam = sympy.symbols("a b z lambda")


def branch_eq(m, factor):
    chars = Characteristics(m, (1,))
    return build_equation(chars, SingularConfig.standard(chars, branch=ConditionPolynomial.from_expr(factor)))


def reduce_mod(expr, factor):
    return sympy.rem(sympy.expand(expr), sympy.sympify(factor), b)


def test_trivial_heun():
    eq = build_equation(Characteristics((0, 0, 0, 0)), SingularConfig(ParamField()))
    one = LZPoly.const(eq.field, 1)
    assert build_product_ode(eq).apply(one).is_zero()
    psi = solve_psi(eq)
    assert psi.genus == 0 and psi.poly == one
    assert spectral_curve(eq, psi).as_poly() == LZPoly.lam(eq.field)
    assert verify_psi(eq, one).ok


def test_reference_psi_12():
    eq = branch_eq((0, 0, 0, 0), "b**2 - a")
    psi = solve_psi(eq)
    want = (z - b) ** 2 * lam + (3 + 3 * a - 4 * b) * z**2 - 2 * (5 * b + 5 * a * b - 8 * a) * z + a * (3 + 3 * a - 4 * b)
    assert psi.genus == 1
    diff = reduce_mod(psi.poly.as_expr() - want, "b**2 - a")
    assert sympy.simplify(diff) == 0


def test_reference_nu2_00():
    eq = branch_eq((0, 0, 0, 0), "b**2 - a")
    nu = spectral_curve(eq, solve_psi(eq))
    want = (lam - 4 * b + 3 * a + 3) * (lam**2 + 7 * (1 + a - 2 * b) * lam
                                         + 2 * (6 * a**2 + 36 * a + 6 - 25 * a * b - 25 * b))
    assert nu.degree == 3
    assert sympy.simplify(reduce_mod(nu.as_poly().as_expr() - want, "b**2 - a")) == 0


def test_psi_leading_term_2000():
    eq = branch_eq((2, 0, 0, 0), "25*b**6-50*(a+1)*b**5+(24*a**2+101*a+24)*b**4-48*a*(a+1)*b**3"
                                 "+19*a**2*b**2+2*a**2*(a+1)*b-a**3")
    psi = solve_psi(eq)
    assert psi.genus == 2
    assert psi.coefficient(0) == LZPoly.product_of_linear(eq.field, [(eq.b[0], 2)])
    assert spectral_curve(eq, psi).degree == 5


def test_negative_control():
    eq = branch_eq((0, 0, 0, 0), "b**2 - a")
    psi = solve_psi(eq).poly
    F = eq.field
    bad = psi + LZPoly.z(F) - LZPoly.const(F, F.b)
    rep = verify_psi(eq, bad)
    assert not rep.ok and not rep.residual.is_zero()


def test_not_finite_gap_off_branch():
    F = ParamField(a=Fraction(4))
    chars = Characteristics((0, 0, 0, 0), (1,))
    eq = build_equation(chars, SingularConfig(F, [F(Fraction(137, 100))]))
    with pytest.raises(NotFiniteGapError):
        solve_psi(eq)


def test_numeric_branch_example():
    F = ParamField(a=Fraction(4))
    chars = Characteristics((0, 0, 0, 0), (1,))
    eq = build_equation(chars, SingularConfig(F, [F(2)]))
    psi = solve_psi(eq)
    assert sympy.expand(psi.poly.as_expr() - (lam * z**2 - 4 * lam * z + 4 * lam + 7 * z**2 - 36 * z + 28)) == 0
    nu = spectral_curve(eq, psi)
    # the symbolic b^2 = a curve at a = 4, b = 2: (lambda + 7)(lambda^2 + 7 lambda - 8)
    assert [c.to_fraction() for c in nu.coeffs] == [-56, 41, 14, 1]
