"""Command line front end.

    python -m fuchsgap candidates --m 0,0,0,0 --n 1
    python -m fuchsgap analyze --spec problem.toml --json
    python -m fuchsgap corpus

Exit codes: 0 success, 2 "not finite-gap" verdict, 1 any error.
Set FUCHSGAP_MAX_WORKERS to cap the number of worker processes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import SYMBOLIC, ConditionPolynomial, ParamField, base_field
from .elliptic import curve_to_E, lattice_from_a, verify_delta_relation
from .false_point import enumerate_candidates, frobenius_obstruction, obstruction_candidates
from .fuchsian import (
    Characteristics,
    DegenerateConfigurationError,
    SingularConfig,
    build_equation,
    characteristic_exponents,
    genus_bounds,
)
from .golden import load_cases, run_corpus
from .novikov import NovikovInconsistencyError, find_novikov_relation
from .psi import NotFiniteGapError, solve_psi, spectral_curve, verify_psi
from .serialize import to_terms

EXIT_OK, EXIT_ERROR, EXIT_NOT_FINITE_GAP = 0, 1, 2
TASKS = ("candidates", "analyze", "verify", "bridge", "evaluate")


class SpecError(ValueError):
    pass


@dataclass
class ProblemSpec:
    m: tuple
    n: tuple = ()
    a: object = SYMBOLIC  # Fraction or SYMBOLIC
    b: list = field(default_factory=list)  # Fraction | "solve" | ConditionPolynomial
    tasks: list = field(default_factory=list)
    tolerance: float = 1e-7
    lambdas: list = field(default_factory=lambda: [1.3 + 0.7j])
    relations: list = field(default_factory=list)
    csv: str | None = None

    @property
    def chars(self) -> Characteristics:
        return Characteristics(self.m, self.n)


def _fraction(value, where: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"field {where!r}: expected a rational number, got {value!r}") from None


def parse_spec(data: dict) -> ProblemSpec:
    """Validate a decoded spec document; errors name the offending field."""
    if not isinstance(data, dict):
        raise SpecError("spec must be a table/object")
    unknown = set(data) - {"m", "n", "a", "b", "tasks", "tolerance", "lambda", "relations", "csv"}
    if unknown:
        raise SpecError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "m" not in data:
        raise SpecError("field 'm' is required")
    m = data["m"]
    if not (isinstance(m, list) and len(m) == 4 and all(isinstance(x, int) and x >= 0 for x in m)):
        raise SpecError(f"field 'm': expected four nonnegative integers, got {m!r}")
    n = data.get("n", [])
    if not (isinstance(n, list) and all(isinstance(x, int) and x >= 0 for x in n)):
        raise SpecError(f"field 'n': expected a list of nonnegative integers, got {n!r}")
    a = data.get("a", SYMBOLIC)
    a = SYMBOLIC if a == SYMBOLIC else _fraction(a, "a")
    if a in (0, 1):
        raise SpecError("field 'a': a must differ from 0 and 1")
    b_raw = data.get("b", ["solve"] * len(n))
    if not isinstance(b_raw, list) or len(b_raw) != len(n):
        raise SpecError(f"field 'b': expected {len(n)} entries (one per extra point), got {b_raw!r}")
    b = []
    for k, entry in enumerate(b_raw):
        where = f"b[{k}]"
        if entry == "solve":
            b.append("solve")
        elif isinstance(entry, str) and "b" in entry:
            try:
                b.append(_condition(entry, a))
            except Exception as exc:  # sympy raises a zoo of types
                raise SpecError(f"field {where!r}: cannot parse condition polynomial ({exc})") from None
        else:
            b.append(_fraction(entry, where))
    tasks = data.get("tasks", [])
    if isinstance(tasks, str):
        tasks = [tasks]
    bad = [t for t in tasks if t not in TASKS]
    if bad:
        raise SpecError(f"field 'tasks': unknown task(s) {bad}; choose from {list(TASKS)}")
    lambdas = [complex(str(x).replace(" ", "").replace("i", "j")) for x in data.get("lambda", [1.3 + 0.7j])] \
        if "lambda" in data else [1.3 + 0.7j]
    return ProblemSpec(tuple(m), tuple(n), a, b, list(tasks), float(data.get("tolerance", 1e-7)), lambdas,
                       list(data.get("relations", [])), data.get("csv"))


def _condition(text: str, a) -> ConditionPolynomial:
    import sympy

    expr = sympy.sympify(text.replace("^", "**"))
    if a == SYMBOLIC:
        return ConditionPolynomial.from_expr(expr, K=base_field(("a",)))
    expr = expr.subs(sympy.Symbol("a"), sympy.Rational(a.numerator, a.denominator))
    return ConditionPolynomial.from_expr(expr, K=base_field(()))


def load_spec_file(path: str) -> dict:
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".json":
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise SpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        import tomllib  # type: ignore[import-not-found]
    except ModuleNotFoundError:
        import tomli as tomllib
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise SpecError(f"{path}: {exc}") from None


# -- building equations from a spec

def _field_for(spec: ProblemSpec, branch=None) -> ParamField:
    return ParamField(a=spec.a, b=branch)


def _equations(spec: ProblemSpec, branch_index: int | None):
    """Yield (label, equation) for every branch selected by the problem file."""
    chars = spec.chars
    if chars.M == 0:
        yield "-", build_equation(chars, SingularConfig(_field_for(spec)))
        return
    if chars.M == 1:
        entry = spec.b[0]
        if entry == "solve":
            if chars.n[0] == 1:
                branches = [br.factor for br in enumerate_candidates(chars.m, spec.a)]
            else:
                if spec.a == SYMBOLIC:
                    raise SpecError("b = 'solve' with n != 1 needs a rational a")
                branches = [br.factor for br in obstruction_candidates(chars.m, chars.n[0], spec.a)]
            if branch_index is not None:
                if not 0 <= branch_index < len(branches):
                    raise SpecError(f"--branch {branch_index} out of range (0..{len(branches) - 1})")
                branches = [branches[branch_index]]
            for br in branches:
                F = ParamField(a=spec.a, b=br)
                yield str(br.as_expr()), build_equation(chars, SingularConfig(F, [F.b]))
            return
        if isinstance(entry, ConditionPolynomial):
            F = ParamField(a=spec.a, b=entry)
            yield str(entry.as_expr()), build_equation(chars, SingularConfig(F, [F.b]))
            return
    if any(not isinstance(x, Fraction) for x in spec.b):
        raise SpecError("several extra points need explicit rational positions")
    F = _field_for(spec)
    yield ",".join(str(x) for x in spec.b), build_equation(chars, SingularConfig(F, [F(x) for x in spec.b]))


def _poly_report(obj) -> dict:
    expr = obj.as_poly().as_expr() if hasattr(obj, "as_poly") else obj.poly.as_expr()
    return {"text": str(expr), "canonical": to_terms(obj)}


# -- tasks

def task_candidates(spec: ProblemSpec, args) -> dict:
    chars = spec.chars
    if chars.M != 1:
        raise SpecError("candidates needs exactly one extra point")
    if chars.n[0] == 1:
        branches = enumerate_candidates(chars.m, spec.a)
    else:
        if spec.a == SYMBOLIC:
            raise SpecError("candidates for n != 1 need a rational a")
        branches = obstruction_candidates(chars.m, chars.n[0], spec.a)
    out = []
    for br in branches:
        roots = [{"value": str(v) if exact else [v.real, v.imag], "exact": exact} for v, exact in br.roots]
        out.append({"factor": str(br.factor.as_expr()), "multiplicity": br.multiplicity, "roots": roots})
    return {"branches": out}


def task_analyze(spec: ProblemSpec, args) -> dict:
    results = []
    for label, eq in _equations(spec, args.branch):
        psi = solve_psi(eq)
        nu = spectral_curve(eq, psi)
        rel = find_novikov_relation(eq)
        results.append({
            "branch": label,
            "genus": psi.genus,
            "novikov_genus": rel.genus,
            "bounds": list(genus_bounds(eq.chars)[:2]),
            "psi": _poly_report(psi),
            "nu2": _poly_report(nu),
            "novikov": {"c": [str(c) for c in rel.c], "d": str(rel.d)},
        })
    return {"analyses": results}


def task_verify(spec: ProblemSpec, args) -> dict:
    results = []
    for label, eq in _equations(spec, args.branch):
        psi = solve_psi(eq)
        nu = spectral_curve(eq, psi)
        rel = find_novikov_relation(eq)
        exps = {p: [str(x) for x in characteristic_exponents(eq, p)] for p in list(eq.points()) + ["inf"]}
        checks = {
            "psi_solves_product_equation": verify_psi(eq, psi).ok,
            "nu2_monic_odd": nu.degree == 2 * psi.genus + 1,
            "novikov_genus_matches": rel.genus == psi.genus,
        }
        if eq.chars.M:
            checks["obstruction_zero"] = all(frobenius_obstruction(eq, k).is_zero() for k in range(eq.chars.M))
        results.append({"branch": label, "checks": checks, "exponents": exps, "ok": all(checks.values())})
    return {"verifications": results}


def task_bridge(spec: ProblemSpec, args) -> dict:
    results = []
    for label, eq in _equations(spec, args.branch):
        psi = solve_psi(eq)
        nu = spectral_curve(eq, psi)
        lat = lattice_from_a(eq.field)
        curve = curve_to_E(nu, lat)
        item = {
            "branch": label,
            "e": [str(lat.e1), str(lat.e2), str(lat.e3)],
            "g2": str(lat.g2), "g3": str(lat.g3),
            "w2": {"text": str(curve.as_poly().as_expr()).replace("lambda", "E"), "canonical": to_terms(curve)},
            "shift": str(curve.shift),
        }
        if eq.chars.M:
            b = lat.field(eq.b[0])
            item["wp_delta"] = str(lat.wp_of_point(b))
            item["relations"] = [
                {"lhs": r["lhs"], "rhs": r["rhs"], "ok": verify_delta_relation(lat, b, r["lhs"], r["rhs"]).ok}
                for r in spec.relations]
        results.append(item)
    return {"bridges": results}


def task_evaluate(spec: ProblemSpec, args) -> dict:
    import numpy as np

    from .numeric import (
        NumericEquation,
        NumericPath,
        NumericPsi,
        evaluate_Y,
        monodromy_probe,
        squared_wronskian_constant,
        write_csv,
    )

    if spec.a == SYMBOLIC:
        raise SpecError("evaluate needs a rational a")
    tol = args.tolerance if args.tolerance is not None else spec.tolerance
    results = []
    for label, eq in _equations(spec, args.branch):
        psi = solve_psi(eq)
        nu = spectral_curve(eq, psi)
        roots = {}
        if eq.field.modulus is not None:
            from .false_point import _numeric_roots

            roots = [v for v, _ in _numeric_roots(eq.field.modulus)]
        for b_num in (roots or [None]):
            values = {"b": complex(b_num)} if b_num is not None else {}
            for lam in spec.lambdas:
                ne = NumericEquation.from_equation(eq, lam, values)
                item = {"branch": label, "b": None if b_num is None else [complex(b_num).real, complex(b_num).imag],
                        "lambda": [lam.real, lam.imag]}
                for k, bk in enumerate(ne.b):
                    rep = monodromy_probe(ne, bk, tol=tol)
                    item[f"monodromy_b{k + 1}"] = {"deviation": rep.deviation, "log_detected": rep.log_detected,
                                                   "det_error": rep.det_error}
                npsi = NumericPsi.from_poly(psi.poly, lam, values)
                nu2 = nu.evaluate(lam, values)
                path = _default_path(ne)
                ys = evaluate_Y(ne, npsi, np.sqrt(nu2), path)
                item["product_error"] = ys.product_error
                item["ode_residual"] = ys.max_residual
                w = squared_wronskian_constant(ne, npsi, _short_path(ne))
                item["nu2"] = [nu2.real, nu2.imag]
                item["nu2_error"] = abs(w - nu2)
                if spec.csv:
                    write_csv(spec.csv, ys.z, ys.Y1)
                results.append(item)
    return {"evaluations": results}


def _default_path(ne) -> "NumericPath":
    from .numeric import NumericPath

    pts = ne.singular_points()
    top = max(p.imag for p in pts) + 1.0
    lo, hi = min(p.real for p in pts), max(p.real for p in pts)
    return NumericPath.polyline([complex(lo - 0.5, top), complex((lo + hi) / 2, top + 0.3), complex(hi + 0.5, top)])


def _short_path(ne) -> "NumericPath":
    from .numeric import NumericPath

    pts = ne.singular_points()
    top = max(p.imag for p in pts) + 1.0
    x = min(p.real for p in pts)
    return NumericPath.polyline([complex(x, top), complex(x + 0.4, top + 0.2)])


TASK_FUNCS = {"candidates": task_candidates, "analyze": task_analyze, "verify": task_verify,
              "bridge": task_bridge, "evaluate": task_evaluate}


# -- corpus

def cmd_corpus(args) -> tuple[dict, int]:
    t0 = time.perf_counter()
    results = run_corpus(args.golden_dir, workers=_workers())
    rows = []
    for r in results:
        rows.append({"family": r.label, "branch": r.factor, "ok": r.ok, "seconds": round(r.seconds, 3),
                     "failed": [k for k, v in r.checks.items() if not v], "diffs": r.diffs})
    report = {"cases": rows, "passed": sum(r.ok for r in results), "total": len(results),
              "runtime_seconds": round(time.perf_counter() - t0, 3)}
    return report, EXIT_OK if all(r.ok for r in results) else EXIT_ERROR


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("FUCHSGAP_MAX_WORKERS", "1")))
    except ValueError:
        return 1


# -- output

def _print_text(command: str, report: dict):
    if command == "corpus":
        for row in report["cases"]:
            status = "PASS" if row["ok"] else "FAIL"
            print(f"{status}  ({row['family']})  {row['branch']}  {row['seconds']:.2f}s")
            for key, lines in row["diffs"].items():
                for line in lines:
                    print(f"      {key}: {line}")
            if row["failed"] and not row["diffs"]:
                print(f"      failed checks: {', '.join(row['failed'])}")
        print(f"{report['passed']}/{report['total']} cases passed in {report['runtime_seconds']:.1f}s")
        return
    for task, body in report.items():
        if task in ("verdict", "error"):
            continue
        print(f"== {task}")
        print(json.dumps(_strip_canonical(body), indent=2, default=str))
    if "verdict" in report:
        print(report["verdict"])


def _strip_canonical(x):
    if isinstance(x, dict):
        if "text" in x and "canonical" in x:
            return x["text"]
        return {k: _strip_canonical(v) for k, v in x.items()}
    if isinstance(x, list):
        return [_strip_canonical(v) for v in x]
    return x


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fuchsgap", description=__doc__.split("\n")[0] if __doc__ else None)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="problem spec file (TOML or JSON)")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--tolerance", type=float, help="numeric tolerance (evaluate)")
    common.add_argument("--branch", type=int, help="only the branch with this index")
    common.add_argument("--m", help="m0,m1,m2,m3 (instead of --spec)")
    common.add_argument("--n", default=None, help="n1,...,nM")
    common.add_argument("--a", default=None, help="rational a or 'symbolic'")
    common.add_argument("--b", default=None, help="';'-separated b entries: rational, 'solve' or a polynomial in b")
    common.add_argument("--lambda", dest="lam", default=None, help="','-separated complex lambda values")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in TASKS:
        sub.add_parser(name, parents=[common], help=f"run the {name} task")
    run = sub.add_parser("run", parents=[common], help="run the tasks listed in the problem file")
    run.set_defaults(command="run")
    corpus = sub.add_parser("corpus", help="check the golden corpus")
    corpus.add_argument("--json", action="store_true")
    corpus.add_argument("--golden-dir", default=None, help="alternative directory of golden files")
    return parser


def _spec_from_args(args) -> ProblemSpec:
    if args.spec:
        data = load_spec_file(args.spec)
    else:
        if not args.m:
            raise SpecError("give --spec FILE or at least --m")
        try:
            data = {"m": [int(x) for x in args.m.split(",")]}
            if args.n:
                data["n"] = [int(x) for x in args.n.split(",")]
        except ValueError:
            raise SpecError("--m/--n must be comma-separated integers") from None
    if args.a is not None:
        data["a"] = args.a
    if args.b is not None:
        data["b"] = [x.strip() for x in args.b.split(";")]
    if args.lam is not None:
        data["lambda"] = [x.strip() for x in args.lam.split(",")]
    return parse_spec(data)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report: dict = {}
    code = EXIT_OK
    try:
        if args.command == "corpus":
            report, code = cmd_corpus(args)
        else:
            spec = _spec_from_args(args)
            tasks = spec.tasks if args.command == "run" else [args.command]
            if not tasks:
                raise SpecError("no tasks given (field 'tasks')")
            for task in tasks:
                report[task] = TASK_FUNCS[task](spec, args)
    except (NotFiniteGapError, NovikovInconsistencyError) as exc:
        report["verdict"] = f"not finite-gap: {exc}"
        code = EXIT_NOT_FINITE_GAP
    except (SpecError, DegenerateConfigurationError, FileNotFoundError) as exc:
        report["error"] = str(exc)
        code = EXIT_ERROR
        print(f"error: {exc}", file=sys.stderr)
    except Exception as exc:  # report, do not dump a traceback on users
        report["error"] = f"{type(exc).__name__}: {exc}"
        code = EXIT_ERROR
        print(f"error: {report['error']}", file=sys.stderr)
    if getattr(args, "json", False):
        print(json.dumps(report, indent=2, default=str))
    elif "error" not in report:
        _print_text(args.command, report)
    return code


if __name__ == "__main__":
    sys.exit(main())
