"""Floating-point sanity check at a = 4.

b = 2 is a root of b^2 - a, so z = b is apparent: going once around it returns
every solution to itself.  Moving b to 1.37 breaks this and a logarithm shows
up in the monodromy.  We also compare the exact nu^2 with the squared
Wronskian of a numeric basis.
"""
import cmath
from fractions import Fraction

from fuchsgap import Characteristics, ParamField, SingularConfig, build_equation, solve_psi, spectral_curve
from fuchsgap.numeric import NumericEquation, NumericPath, NumericPsi, evaluate_Y, monodromy_probe, \
    squared_wronskian_constant

F = ParamField(a=Fraction(4))
chars = Characteristics((0, 0, 0, 0), (1,))
path = NumericPath.polyline([-0.5 + 1j, 1.5 + 1.3j, 4.5 + 1j])

eq = build_equation(chars, SingularConfig(F, [F(2)]))
psi = solve_psi(eq)
nu = spectral_curve(eq, psi)
for lam in (1.3 + 0.7j, -2.1 + 0.4j, 3.5 - 1.2j):
    ne = NumericEquation.from_equation(eq, lam)
    npsi = NumericPsi.from_poly(psi.poly, lam, {})
    rep = monodromy_probe(ne, 2)
    ys = evaluate_Y(ne, npsi, cmath.sqrt(nu.evaluate(lam, {})), path)
    w = squared_wronskian_constant(ne, npsi, NumericPath.polyline([-0.5 + 1j, -0.1 + 1.2j]))
    print(f"lambda={lam}:  |M - I| = {rep.deviation:.1e}  |Y1 Y2 - Psi| = {ys.product_error:.1e}  "
          f"|W^2 - nu^2| = {abs(w - nu.evaluate(lam, {})):.1e}")

bad = build_equation(chars, SingularConfig(F, [F(Fraction(137, 100))]))
rep = monodromy_probe(NumericEquation.from_equation(bad, 1.3 + 0.7j), 1.37)
print(f"\nb = 1.37: |M - I| = {rep.deviation:.2f}, logarithm detected: {rep.log_detected}")
