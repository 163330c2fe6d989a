"""Finite-gap Fuchsian equations with apparent singular points, in exact arithmetic."""
from .algebra import (
    GENERIC,
    SYMBOLIC,
    ConditionPolynomial,
    ModulusNotPrimeError,
    ParamField,
    ParamScalar,
    determinant,
    nullspace,
    poly_gcd,
    quotient_reduce,
)
from .elliptic import LatticeData, NormalizedCurve, curve_to_E, lattice_from_a, verify_delta_relation
from .false_point import (
    enumerate_candidates,
    frobenius_obstruction,
    obstruction_candidates,
    sextic_condition,
)
from .fuchsian import (
    Characteristics,
    FuchsianEquation,
    SingularConfig,
    build_equation,
    characteristic_exponents,
    genus_bounds,
    heun_genus,
)
from .novikov import apply_L, build_I0, find_novikov_relation, tune_b_residue
from .psi import (
    NotFiniteGapError,
    PsiPolynomial,
    SpectralCurve,
    build_product_ode,
    solve_psi,
    spectral_curve,
    verify_psi,
)
from .rational import RationalFunctionZ

__version__ = "0.1.0"
