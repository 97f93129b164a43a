"""Command-line front door.

Exit codes: 0 success, 1 usage/domain error, 2 numerical failure.
Angles are radians unless --degrees is given.  Monomial precision comes
from --digits (an integer for big-float digits, or "native"), falling back
to the SPHCONV_DIGITS environment variable, then to certified defaults.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from . import hiprec
from .asympt import asymptotic_i, pole_term
from .bench import AlphaGrid, GridSpec, preset, render_csv, run_grid, timing_summary, to_json
from .core import Method, Problem, MONOMIAL_METHODS
from .errors import DomainError, NumericalFailure, SphconvError
from .gegenbauer import solve_method_6
from .methods import evaluate
from .spectral import solve_method_4, solve_method_5
from .verify import format_table, run_acceptance


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on usage errors; this project reserves
    2 for numerical failures, so usage errors are remapped to 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _alpha_value(args) -> float:
    return math.radians(args.alpha) if args.degrees else args.alpha


def _resolve_ctx(args, n: int):
    spec = args.digits if args.digits is not None else os.environ.get("SPHCONV_DIGITS")
    if spec is None:
        return None
    text = str(spec).strip().lower()
    if text == "native":
        return hiprec.NATIVE
    try:
        digits = int(text)
    except ValueError as exc:
        raise DomainError(f"--digits expects an integer or 'native', got {spec!r}") from exc
    return hiprec.PrecisionContext(digits, hiprec.BIG_FLOAT)


def _print_result(result, problem: Problem, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps({
            "method": result.method.value,
            "n": problem.n,
            "alpha": problem.alpha,
            "value": result.value,
            "truncation": result.truncation_order,
            "digits": result.digits_used,
            "seconds": result.seconds,
        }))
        return
    if fmt == "csv":
        print("method,n,alpha,value,seconds,digits,truncation")
        print(f"{result.method.value},{problem.n},{problem.alpha:.17g},"
              f"{result.value:.17g},{result.seconds:.17g},{result.digits_used},"
              f"{result.truncation_order}")
        return
    print(f"method={result.method.value} n={problem.n} alpha={problem.alpha:.17g}")
    print(f"value={result.value:.17g}")
    print(f"truncation={result.truncation_order} digits={result.digits_used} "
          f"seconds={result.seconds:.3g}")


def cmd_eval(args) -> int:
    problem = Problem(args.n, _alpha_value(args))
    method = Method.parse(args.method)
    ctx = _resolve_ctx(args, args.n) if method in MONOMIAL_METHODS else None
    result = evaluate(problem, method, ctx=ctx)
    _print_result(result, problem, args.format)
    return 0


def cmd_scan(args) -> int:
    method = Method.parse(args.method)
    start, stop = args.alpha_start, args.alpha_stop
    if args.degrees:
        start, stop = math.radians(start), math.radians(stop)
    grid = AlphaGrid(start, stop, args.count)
    rows = []
    for alpha in grid.points():
        problem = Problem(args.n, float(alpha))
        ctx = _resolve_ctx(args, args.n) if method in MONOMIAL_METHODS else None
        result = evaluate(problem, method, ctx=ctx)
        rows.append((problem, result))
    if args.format == "json":
        print(json.dumps([
            {"method": r.method.value, "n": p.n, "alpha": p.alpha, "value": r.value,
             "truncation": r.truncation_order, "digits": r.digits_used,
             "seconds": r.seconds}
            for p, r in rows
        ]))
        return 0
    print("method,n,alpha,value,seconds,digits,truncation")
    for p, r in rows:
        print(f"{r.method.value},{p.n},{p.alpha:.17g},{r.value:.17g},"
              f"{r.seconds:.17g},{r.digits_used},{r.truncation_order}")
    return 0


def _parse_int_list(text: str) -> tuple:
    items = [piece for piece in text.split(",") if piece.strip()]
    return tuple(int(piece) for piece in items)


def cmd_bench(args) -> int:
    if args.preset:
        spec = preset(args.preset)
        if args.repeats is not None:
            spec = GridSpec(spec.n_values, spec.alpha_grid, spec.methods, spec.reference,
                            args.repeats, spec.monomial_mode, spec.monomial_digits)
    else:
        missing = [flag for flag, val in (("--n-values", args.n_values),
                                          ("--alpha-start", args.alpha_start),
                                          ("--alpha-stop", args.alpha_stop),
                                          ("--count", args.count),
                                          ("--methods", args.methods)) if val is None]
        if missing:
            raise DomainError("bench needs --preset or all of: " + ", ".join(missing))
        methods = tuple(m for m in args.methods.split(",") if m.strip())
        if "all" in methods:
            methods = tuple(Method)
        spec = GridSpec(
            n_values=_parse_int_list(args.n_values),
            alpha_grid=AlphaGrid(args.alpha_start, args.alpha_stop, args.count),
            methods=methods,
            reference=args.reference,
            repeats=args.repeats if args.repeats is not None else 5,
            monomial_mode=args.monomial_mode,
        )
    records = run_grid(spec)
    payload = to_json(records) if args.format == "json" else render_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(payload)
        for row in timing_summary(records):
            print(f"{row['method']}: median {row['median_seconds']:.2e}s "
                  f"p95 {row['p95_seconds']:.2e}s over {row['cells']} cells")
    else:
        sys.stdout.write(payload)
    return 0


def cmd_verify(args) -> int:
    results = run_acceptance(quick=args.quick, seed=args.seed)
    print(format_table(results))
    return 0 if all(r.passed for r in results) else 2


_COEFF_SOLVERS = {
    Method.GALERKIN: solve_method_4,
    Method.VOLTERRA: solve_method_5,
    Method.GEGENBAUER: solve_method_6,
}


def cmd_coeffs(args) -> int:
    method = Method.parse(args.method)
    if method not in _COEFF_SOLVERS:
        raise DomainError("coeffs supports galerkin, volterra, gegenbauer (m4/m5/m6)")
    problem = Problem(args.n, 1.0)
    coeffs = _COEFF_SOLVERS[method](problem)
    j_top = coeffs.j_max if args.j_max is None else min(args.j_max, coeffs.j_max)
    if args.format == "json":
        print(json.dumps({
            "method": method.value, "n": args.n,
            "provenance": coeffs.provenance.value,
            "c": [coeffs.c[j] for j in range(j_top + 1)],
        }))
        return 0
    print("j,c_2j")
    for j in range(j_top + 1):
        print(f"{j},{coeffs.c[j]:.17g}")
    return 0


def cmd_asympt(args) -> int:
    problem = Problem(args.n, _alpha_value(args))
    breakdown = asymptotic_i(problem)
    k_here = pole_term(problem.alpha, problem.n)
    k_anti = pole_term(math.pi - problem.alpha, problem.n)
    if args.format == "json":
        print(json.dumps({
            "n": problem.n, "alpha": problem.alpha, "value": breakdown.value,
            "leading_log": breakdown.leading_log, "remainder": breakdown.remainder,
            "envelope": breakdown.envelope, "pole_term": k_here,
            "pole_term_antipode": k_anti, "pole_average": 0.5 * (k_here + k_anti),
        }))
        return 0
    print(f"n={problem.n} alpha={problem.alpha:.17g}")
    print(f"value={breakdown.value:.17g}")
    print(f"leading_log={breakdown.leading_log:.17g} remainder={breakdown.remainder:.17g} "
          f"envelope={breakdown.envelope:.17g}")
    print(f"pole_term={k_here:.17g} pole_term_antipode={k_anti:.17g} "
          f"pole_average={0.5 * (k_here + k_anti):.17g}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="sphconv", description=__doc__)
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add_common(p, alpha=True):
        p.add_argument("-N", "--n", dest="n", type=int, required=True,
                       help="harmonic index N (positive integer)")
        if alpha:
            p.add_argument("--alpha", type=float, required=True, help="opening angle")
        p.add_argument("--degrees", action="store_true", help="interpret angles in degrees")
        p.add_argument("--digits", default=None,
                       help="monomial precision: decimal digit count or 'native'")
        p.add_argument("--format", choices=("plain", "csv", "json"), default="plain")

    p_eval = sub.add_parser("eval", help="evaluate I(N, alpha) by one method")
    p_eval.add_argument("--method", required=True)
    add_common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_scan = sub.add_parser("scan", help="evaluate one method over an alpha grid")
    p_scan.add_argument("--method", required=True)
    p_scan.add_argument("-N", "--n", dest="n", type=int, required=True)
    p_scan.add_argument("--alpha-start", type=float, required=True)
    p_scan.add_argument("--alpha-stop", type=float, required=True)
    p_scan.add_argument("--count", type=int, required=True)
    p_scan.add_argument("--degrees", action="store_true")
    p_scan.add_argument("--digits", default=None)
    p_scan.add_argument("--format", choices=("plain", "csv", "json"), default="csv")
    p_scan.set_defaults(func=cmd_scan)

    p_bench = sub.add_parser("bench", help="run a benchmark grid, emit CSV/JSON")
    p_bench.add_argument("--preset", choices=("fig1", "fig2", "fig3"))
    p_bench.add_argument("--n-values")
    p_bench.add_argument("--alpha-start", type=float)
    p_bench.add_argument("--alpha-stop", type=float)
    p_bench.add_argument("--count", type=int)
    p_bench.add_argument("--methods", help="comma-separated method names or 'all'")
    p_bench.add_argument("--reference", choices=("auto", "oracle_2d", "method_6"),
                         default="auto")
    p_bench.add_argument("--repeats", type=int, default=None)
    p_bench.add_argument("--monomial-mode", choices=("certified", "native"),
                         default="certified")
    p_bench.add_argument("--out", default=None)
    p_bench.add_argument("--format", choices=("csv", "json"), default="csv")
    p_bench.set_defaults(func=cmd_bench)

    p_verify = sub.add_parser("verify", help="run the acceptance-style check suite")
    p_verify.add_argument("--quick", action="store_true", help="small-N subset, < 30 s")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(func=cmd_verify)

    p_coeffs = sub.add_parser("coeffs", help="print spectral coefficients C_2j")
    p_coeffs.add_argument("--method", required=True)
    p_coeffs.add_argument("-N", "--n", dest="n", type=int, required=True)
    p_coeffs.add_argument("--j-max", type=int, default=None)
    p_coeffs.add_argument("--format", choices=("plain", "json"), default="plain")
    p_coeffs.set_defaults(func=cmd_coeffs)

    p_asympt = sub.add_parser("asympt", help="large-N asymptotic breakdown and pole split")
    add_common(p_asympt)
    p_asympt.set_defaults(func=cmd_asympt)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except NumericalFailure as exc:
        print(f"numerical failure ({type(exc).__name__}): {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SphconvError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
