"""Where can an extra apparent singular point sit?

For one extra point with n = 1 the admissible positions b are roots of a
sextic in b.  We factor it over Q(a), then cross-check a numeric root against
the Frobenius obstruction, which knows nothing about the sextic.
"""
from fractions import Fraction

from fuchsgap import Characteristics, SingularConfig, build_equation, enumerate_candidates, frobenius_obstruction

for m in [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (2, 0, 0, 0)]:
    print(m)
    for br in enumerate_candidates(m):
        print("   ", br.factor.as_expr())

a = Fraction(2)
m = (2, 0, 0, 0)
chars = Characteristics(m, (1,))
eq = build_equation(chars, SingularConfig.standard(chars, a=a))
ob = frobenius_obstruction(eq)
print(f"\nm = {m}, a = {a}: obstruction at the six numeric roots")
for br in enumerate_candidates(m, a):
    for root, _ in br.roots:
        print(f"    b = {complex(root):.6f}   |obstruction| = {abs(ob.value.evaluate({'b': complex(root)})):.1e}")
