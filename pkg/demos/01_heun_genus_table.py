"""Genus of the finite-gap Heun equations with small characteristics.

Without extra points every choice of m gives a finite-gap equation.  The
table lists the genus found by solving for the polynomial Psi and compares it
with the closed formula.
"""
import itertools
from fractions import Fraction

from fuchsgap import Characteristics, ParamField, SingularConfig, build_equation, heun_genus, solve_psi

F = ParamField(a=Fraction(7, 3))
print(f"{'m':>14}  N  solver  formula")
for m in itertools.product(range(4), repeat=4):
    if sum(m) > 4 or list(m) != sorted(m, reverse=True):
        continue
    chars = Characteristics(m)
    g = solve_psi(build_equation(chars, SingularConfig(F))).genus
    print(f"{str(m):>14}  {sum(m)}  {g:>6}  {heun_genus(chars):>7}")
