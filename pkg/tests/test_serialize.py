import json
from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fuchsgap.algebra import ConditionPolynomial, ParamField
from fuchsgap.fuchsian import Characteristics, SingularConfig, build_equation
from fuchsgap.psi import solve_psi, spectral_curve
from fuchsgap.serialize import canonical_equal, fraction_str, from_terms, terms_to_expr, to_terms

a, b, z, lam, e1 = sympy.symbols("a b z lambda e1")
monomials = [lam**2 * z, lam * z**3, b * a**2, z * b, a, lam * b * e1, sympy.Integer(1)]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.sampled_from(monomials), st.fractions(min_value=-50, max_value=50, max_denominator=9)),
                max_size=6))
def test_expr_round_trip(parts):
    expr = sum((sympy.Rational(c.numerator, c.denominator) * m for m, c in parts), sympy.Integer(0))
    data = json.loads(json.dumps(to_terms(expr)))
    assert sympy.expand(terms_to_expr(data) - expr) == 0


def test_term_order():
    data = to_terms(a * b + lam * z + lam**2 + 3 * z**2 + b**2)
    keys = [(t.get("pow_lambda", 0), t.get("pow_z", 0), t.get("pow_b", 0), t.get("pow_a", 0)) for t in data["terms"]]
    assert keys == sorted(keys, reverse=True)
    assert data["terms"][0] == {"num": "1", "den": "1", "pow_lambda": 2}


def test_denominator_in_a():
    data = to_terms((lam + b) / (2 * a + 2))
    assert terms_to_expr(data).equals((lam + b) / (2 * a + 2))
    assert data["den_terms"][0] == {"num": "1", "den": "1", "pow_a": 1}


def test_psi_round_trip():
    p = ConditionPolynomial.from_expr("3*b**2 - 2*(a+1)*b + a")
    chars = Characteristics((1, 0, 0, 0), (1,))
    eq = build_equation(chars, SingularConfig.standard(chars, branch=p))
    psi = solve_psi(eq)
    assert from_terms(to_terms(psi), eq.field) == psi.poly
    nu = spectral_curve(eq, psi)
    assert from_terms(to_terms(nu), eq.field) == nu.as_poly()
    assert canonical_equal(psi, psi.poly)


def test_fraction_str():
    assert fraction_str(Fraction(3)) == "3" and fraction_str(Fraction(-2, 6)) == "-1/3"


def test_scalar_terms():
    F = ParamField()
    x = F.a / (F.a + 1)
    assert to_terms(x) == {"terms": [{"num": "1", "den": "1", "pow_a": 1}],
                           "den_terms": [{"num": "1", "den": "1", "pow_a": 1}, {"num": "1", "den": "1"}]}
