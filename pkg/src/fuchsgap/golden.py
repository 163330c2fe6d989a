"""Golden corpus: transcribed reference data and an end-to-end exact comparison."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import expr as fexpr
from .algebra import ConditionPolynomial, udivmod
from .elliptic import curve_to_E, lattice_from_a, verify_delta_relation
from .false_point import sextic_condition
from .fuchsian import Characteristics, SingularConfig, build_equation
from .novikov import find_novikov_relation
from .polys import LZPoly
from .psi import solve_psi, spectral_curve
from .serialize import from_terms, terms_to_expr

GOLDEN_DIR = Path(__file__).parent / "data" / "golden"


@dataclass
class GoldenCase:
    label: str
    m: tuple
    n: tuple
    condition: dict  # canonical terms of the displayed condition
    branch: dict
    source: str = ""

    @property
    def factor(self) -> str:
        return self.branch["factor"]


@dataclass
class CaseResult:
    label: str
    factor: str
    checks: dict = field(default_factory=dict)
    diffs: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def load_cases(directory: Path | str | None = None) -> list[GoldenCase]:
    directory = Path(directory) if directory is not None else GOLDEN_DIR
    files = sorted(directory.glob("*.json"))
    if not files:
        raise FileNotFoundError(f"no golden files in {directory}")
    cases = []
    for path in files:
        data = json.loads(path.read_text())
        for br in data["branches"]:
            cases.append(GoldenCase(data["label"], tuple(data["m"]), tuple(data["n"]),
                                    data["condition_terms"], br, path.name))
    return cases


def coefficient_diff(computed: LZPoly, expected: LZPoly) -> list[str]:
    """One line per (lambda, z) monomial whose coefficients differ."""
    out = []
    keys = sorted(set(computed.terms) | set(expected.terms), reverse=True)
    for i, j in keys:
        c, e = computed.coeff(i, j), expected.coeff(i, j)
        if c != e:
            out.append(f"lambda^{i} z^{j}: expected {e}, got {c}")
    return out


def run_case(case: GoldenCase, with_novikov: bool = True) -> CaseResult:
    t0 = time.perf_counter()
    res = CaseResult(case.label, case.factor)
    br = case.branch

    # condition: 4 * sextic equals the displayed product
    cond = ConditionPolynomial.from_expr(terms_to_expr(case.condition), check=False)
    sextic = sextic_condition(case.m).poly
    res.checks["condition"] = [4 * c for c in sextic.coeffs] == list(cond.coeffs)
    factor = ConditionPolynomial.from_expr(terms_to_expr(br["factor_terms"]), tag="sextic-factor")
    res.checks["factor_divides"] = not udivmod(cond.coeffs, factor.coeffs)[1]

    chars = Characteristics(case.m, case.n)
    eq = build_equation(chars, SingularConfig.standard(chars, branch=factor))
    psi = solve_psi(eq)
    nu = spectral_curve(eq, psi)
    F = eq.field
    exp_psi = from_terms(br["psi_terms"], F)
    exp_nu = from_terms(br["nu2_terms"], F)
    res.checks["genus"] = psi.genus == br["genus"] and nu.degree == 2 * psi.genus + 1
    res.checks["psi"] = psi.poly == exp_psi
    res.checks["nu2"] = nu.as_poly() == exp_nu
    if not res.checks["psi"]:
        res.diffs["psi"] = coefficient_diff(psi.poly, exp_psi)
    if not res.checks["nu2"]:
        res.diffs["nu2"] = coefficient_diff(nu.as_poly(), exp_nu)
    if with_novikov:
        res.checks["novikov_genus"] = find_novikov_relation(eq).genus == psi.genus

    if "w2_terms" in br:
        lat = lattice_from_a(F)
        L = lat.field
        b = L.b
        const = lambda v: LZPoly.const(L, v)  # noqa: E731
        env = {"e1": const(lat.e1), "e2": const(lat.e2), "e3": const(lat.e3), "g2": const(lat.g2),
               "g3": const(lat.g3), "wp": const(lat.wp_of_point(b)), "E": LZPoly.lam(L)}
        expected = fexpr.evaluate(terms_to_expr(br["w2_terms"]), env, const(1))
        got = curve_to_E(nu, lat).as_poly()
        res.checks["w2"] = got == expected
        if not res.checks["w2"]:
            res.diffs["w2"] = [s.replace("lambda", "E") for s in coefficient_diff(got, expected)]
        for k, rel in enumerate(br.get("relations", [])):
            rep = verify_delta_relation(lat, b, rel["lhs"], rel["rhs"])
            res.checks[f"relation:{rel['lhs']}={rel['rhs']}"] = rep.ok
    res.seconds = time.perf_counter() - t0
    return res


def run_corpus(directory=None, cases: list[GoldenCase] | None = None, workers: int = 1) -> list[CaseResult]:
    cases = cases if cases is not None else load_cases(directory)
    if workers <= 1:
        return [run_case(c) for c in cases]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_case, cases))
