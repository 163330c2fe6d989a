"""Same characteristics, different branches, different genus.

With m = (1,0,0,0) and one extra point, the sextic splits into a quadratic and
a quartic.  The quadratic branch gives a two-gap potential, the quartic a
one-gap one.  For each we print Psi, the spectral curve nu^2(lambda) and its
Weierstrass form w^2(E).
"""
from fuchsgap import (
    Characteristics,
    ConditionPolynomial,
    SingularConfig,
    build_equation,
    curve_to_E,
    find_novikov_relation,
    lattice_from_a,
    solve_psi,
    spectral_curve,
)

chars = Characteristics((1, 0, 0, 0), (1,))
for factor in ("3*b**2 - 2*(a+1)*b + a", "3*b**4 - 4*(a+1)*b**3 + 6*a*b**2 - a**2"):
    p = ConditionPolynomial.from_expr(factor)
    eq = build_equation(chars, SingularConfig.standard(chars, branch=p))
    psi = solve_psi(eq)
    nu = spectral_curve(eq, psi)
    w = curve_to_E(nu, lattice_from_a(eq.field))
    print(f"branch {factor} = 0")
    print(f"  genus {psi.genus} (Novikov: {find_novikov_relation(eq).genus})")
    print(f"  Psi  = {psi.poly.as_expr()}")
    print(f"  nu^2 = {nu.as_poly().as_expr()}")
    print(f"  w^2  = {str(w.as_poly().as_expr()).replace('lambda', 'E')}\n")
