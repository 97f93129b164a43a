"""Cross-method and oracle verification suite.

Each check mirrors one acceptance criterion (A1-A7) at desk scale and
returns a CheckResult rather than raising, so the full table always
prints.  quick=True shrinks grids (N <= 6 where a criterion allows it)
for a sub-30-second smoke run; seed only moves random spot-check points.
"""

from __future__ import annotations

import math
import time
import traceback
from dataclasses import dataclass

import numpy as np

from . import hiprec
from .asympt import asymptotic_i, pole_term, remainder_closed_form, remainder_series
from .core import Method, Problem
from .errors import NumericalFailure
from .gegenbauer import eval_method_6, solve_method_6, tail_identity_residual
from .methods import evaluate
from .monomial import moment_j, moment_j_gaussian
from .oracle import integrate_2d
from .specfun import cin, legendre_all, spherical_bessel_all
from .spectral import build_galerkin, solve_method_4, solve_method_5

_INTEGRAL_METHODS = (
    Method.METHOD1, Method.METHOD2, Method.METHOD3,
    Method.GALERKIN, Method.VOLTERRA, Method.GEGENBAUER,
)


@dataclass(frozen=True)
class CheckResult:
    criterion: str
    name: str
    passed: bool
    detail: str
    seconds: float


def _finish(criterion: str, name: str, passed: bool, detail: str, t0: float) -> CheckResult:
    return CheckResult(criterion, name, passed, detail, time.perf_counter() - t0)


def check_six_method_agreement(quick: bool = False) -> CheckResult:
    """A1: all six integral evaluators track the 2D oracle at small N."""
    t0 = time.perf_counter()
    n_values = range(1, 7) if quick else range(1, 16)
    count = 6 if quick else 12
    alphas = np.linspace(0.2, math.pi - 0.2, count)
    worst = 0.0
    worst_at = ""
    for n in n_values:
        ctx = hiprec.certified(n)
        for alpha in alphas:
            problem = Problem(n, float(alpha))
            ref = integrate_2d(problem)
            scale = 1.0 + abs(ref)
            for method in _INTEGRAL_METHODS:
                value = evaluate(problem, method, ctx=ctx).value
                rel = abs(value - ref) / scale
                if rel > worst:
                    worst, worst_at = rel, f"{method.value}, N={n}, alpha={alpha:.3f}"
    elapsed = time.perf_counter() - t0
    passed = worst < 1e-7 and elapsed < 600.0
    return _finish(
        "A1", "six-method agreement vs oracle", passed,
        f"worst rel err {worst:.2e} ({worst_at}); {elapsed:.1f}s", t0,
    )


def check_instability_reproduction(quick: bool = False) -> CheckResult:
    """A2: at N = 20, native doubles break the monomial route while the
    spectral routes stay at the noise floor and run far faster than the
    certified monomial path."""
    t0 = time.perf_counter()
    n = 20
    count = 16 if quick else 60
    alphas = np.linspace(0.1, math.pi - 0.1, count)
    spectral = (Method.GALERKIN, Method.VOLTERRA, Method.GEGENBAUER)

    native_broken = False
    spectral_worst = 0.0
    spectral_times = []
    certified_times = []
    certified_ctx = hiprec.certified(n)
    for alpha in alphas:
        problem = Problem(n, float(alpha))
        ref = integrate_2d(problem)
        try:
            native = evaluate(problem, Method.METHOD2, ctx=hiprec.NATIVE)
            if abs(native.value - ref) > 1.0:
                native_broken = True
        except NumericalFailure:
            native_broken = True
        for method in spectral:
            result = evaluate(problem, method)
            spectral_worst = max(spectral_worst, abs(result.value - ref))
            spectral_times.append(result.seconds)
        certified_times.append(evaluate(problem, Method.METHOD2, ctx=certified_ctx).seconds)

    ratio = float(np.median(certified_times) / np.median(spectral_times))
    passed = native_broken and spectral_worst < 1e-8 and ratio >= 10.0
    return _finish(
        "A2", "native-double instability at N=20", passed,
        f"native broken={native_broken}, spectral worst abs err {spectral_worst:.2e}, "
        f"certified/spectral median speed ratio {ratio:.0f}x", t0,
    )


def check_coefficient_anchor(quick: bool = False) -> CheckResult:
    """A3: sum over Gegenbauer coefficients hits C_0 = Cin(2A)/2, and all
    three spectral routes report the same C_0."""
    t0 = time.perf_counter()
    n_max = 20 if quick else 100
    worst_anchor = 0.0
    worst_c0 = 0.0
    for n in range(1, n_max + 1):
        problem = Problem(n, 1.0)
        worst_anchor = max(worst_anchor, abs(tail_identity_residual(problem)))
        c0_ref = 0.5 * cin(2.0 * problem.a)
        for solver in (solve_method_4, solve_method_5, solve_method_6):
            worst_c0 = max(worst_c0, abs(solver(problem).c0 - c0_ref))
    passed = worst_anchor < 1e-10 and worst_c0 < 1e-9
    return _finish(
        "A3", "C_0 identity across methods", passed,
        f"worst anchor residual {worst_anchor:.2e}, worst C_0 spread {worst_c0:.2e} "
        f"(N <= {n_max})", t0,
    )


def check_asymptote_convergence(quick: bool = False) -> CheckResult:
    """A4: relative error of the asymptote vs the exact spectral value at
    alpha = 1 falls monotonically over N = 10, 100, 1000 and ends < 1%."""
    t0 = time.perf_counter()
    rels = []
    for n in (10, 100, 1000):
        problem = Problem(n, 1.0)
        exact = eval_method_6(problem).value
        rels.append(abs(asymptotic_i(problem).value - exact) / abs(exact))
    elapsed = time.perf_counter() - t0
    decreasing = rels[0] > rels[1] > rels[2]
    passed = decreasing and rels[2] < 0.01 and elapsed < 60.0
    return _finish(
        "A4", "asymptote convergence at alpha=1", passed,
        "rel err " + " > ".join(f"{r:.2e}" for r in rels) + f"; {elapsed:.1f}s", t0,
    )


def check_remainder_identity(quick: bool = False) -> CheckResult:
    """A5: the discrete harmonic-number remainder series matches the
    closed form, improving from j_max = 1e3 to 1e4."""
    t0 = time.perf_counter()
    worst = 0.0
    ordered = True
    for alpha in (0.5, 1.0, 2.0):
        exact = remainder_closed_form(alpha)
        err_hi = abs(remainder_series(alpha, 10_000) - exact)
        err_lo = abs(remainder_series(alpha, 1_000) - exact)
        worst = max(worst, err_hi)
        ordered = ordered and err_hi < err_lo
    passed = worst < 1e-2 and ordered
    return _finish(
        "A5", "harmonic remainder series vs closed form", passed,
        f"worst err at j_max=1e4: {worst:.2e}; improves from 1e3: {ordered}", t0,
    )


def check_pole_assembly(seed: int = 0, quick: bool = False) -> CheckResult:
    """A6: (K(alpha) + K(pi - alpha))/2 reassembles the asymptote to
    machine precision on random (alpha, n)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        alpha = float(rng.uniform(0.1, math.pi - 0.1))
        n = int(rng.integers(1, 1001))
        assembled = 0.5 * pole_term(alpha, n) + 0.5 * pole_term(math.pi - alpha, n)
        target = asymptotic_i(Problem(n, alpha)).value
        scale = max(1.0, abs(assembled), abs(target))
        worst = max(worst, abs(assembled - target) / scale)
    passed = worst < 1e-12
    return _finish(
        "A6", "two-pole assembly identity", passed,
        f"worst scaled residual {worst:.2e} over 100 random draws", t0,
    )


def _parity_positivity(quick: bool, failures: list) -> str:
    n_values = (1, 2, 3) if quick else (1, 2, 3, 5, 8)
    worst_parity = 0.0
    worst_value = math.inf
    for n in n_values:
        ctx = hiprec.certified(n)
        for alpha in (0.3, 0.7, 1.2):
            problem = Problem(n, alpha)
            partner = Problem(n, math.pi - alpha)
            for method in _INTEGRAL_METHODS + (Method.ASYMPTOTIC,):
                monomial = method in (Method.METHOD1, Method.METHOD2, Method.METHOD3)
                kwargs = {"ctx": ctx} if monomial else {}
                v1 = evaluate(problem, method, **kwargs).value
                v2 = evaluate(partner, method, **kwargs).value
                gap = abs(v1 - v2) / (1.0 + abs(v1))
                worst_parity = max(worst_parity, gap)
                if method is not Method.ASYMPTOTIC:
                    worst_value = min(worst_value, v1)
    if worst_parity > 1e-9:
        failures.append(f"parity gap {worst_parity:.2e}")
    if worst_value < -1e-9:
        failures.append(f"negative integral value {worst_value:.2e}")
    return f"parity {worst_parity:.2e}, min value {worst_value:.3f}"


def _bauer_reconstruction(quick: bool, rng, failures: list) -> str:
    worst = 0.0
    for n in (1, 5) if quick else (1, 5, 12):
        a = n * math.pi
        l_max = 2 * (math.ceil((a + 30.0) / 2) + 5)
        bessel = spherical_bessel_all(a, l_max).values
        for t in rng.uniform(-1.0, 1.0, size=8):
            p = legendre_all(float(t), l_max).values
            acc = 0.0
            for l in range(0, l_max + 1, 2):
                sign = 1.0 if (l // 2) % 2 == 0 else -1.0
                acc += sign * (2 * l + 1) * bessel[l] * p[l]
            worst = max(worst, abs(acc - math.cos(a * float(t))))
    if worst > 1e-8:
        failures.append(f"plane-wave reconstruction err {worst:.2e}")
    return f"bauer {worst:.2e}"


def _moment_agreement(rng, failures: list) -> str:
    worst = 0.0
    for k in range(6):
        for j in range(6):
            if k + j > 10:
                continue
            for c in rng.uniform(-1.0, 1.0, size=3):
                a_val = moment_j(k, j, float(c))
                b_val = moment_j_gaussian(k, j, float(c))
                worst = max(worst, abs(a_val - b_val) / max(abs(a_val), 1e-300))
    if worst > 1e-12:
        failures.append(f"moment route disagreement {worst:.2e}")
    return f"moments {worst:.2e}"


def _galerkin_entries(failures: list) -> str:
    problem = Problem(3, 1.0)
    system = build_galerkin(problem)
    x, w = np.polynomial.legendre.leggauss(240)
    worst = 0.0
    p = np.empty((24, x.size))
    p[0] = 1.0
    p[1] = x
    for l in range(2, 24):
        p[l] = ((2 * l - 1) * x * p[l - 1] - (l - 1) * p[l - 2]) / l
    weight = (1.0 - x * x) * w
    for i in range(11):
        quad_diag = float(np.sum(weight * p[2 * i] * p[2 * i]))
        worst = max(worst, abs(system.diag[i] - quad_diag))
        if i < 10:
            quad_off = float(np.sum(weight * p[2 * i] * p[2 * i + 2]))
            worst = max(worst, abs(system.off[i] - quad_off))
    if worst > 1e-12:
        failures.append(f"Galerkin entry mismatch {worst:.2e}")
    return f"galerkin entries {worst:.2e}"


def _coefficient_cross_equivalence(quick: bool, failures: list) -> str:
    worst = 0.0
    for n in range(1, 7 if quick else 21):
        problem = Problem(n, 1.0)
        c4 = solve_method_4(problem)
        c5 = solve_method_5(problem)
        c6 = solve_method_6(problem)
        j_top = min(c4.j_max, c5.j_max, c6.j_max)
        for coeffs in (c5, c6):
            gap = np.max(np.abs(coeffs.c[: j_top + 1] - c4.c[: j_top + 1]))
            worst = max(worst, float(gap))
    if worst > 1e-10:
        failures.append(f"coefficient spread {worst:.2e}")
    return f"coeff cross-equivalence {worst:.2e}"


def check_property_suite(quick: bool = False, seed: int = 0) -> CheckResult:
    """A7: parity, positivity, plane-wave reconstruction, moment-route
    agreement, Galerkin entries vs quadrature, coefficient equivalence."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    failures: list = []
    parts = [
        _parity_positivity(quick, failures),
        _bauer_reconstruction(quick, rng, failures),
        _moment_agreement(rng, failures),
        _galerkin_entries(failures),
        _coefficient_cross_equivalence(quick, failures),
    ]
    passed = not failures
    detail = "; ".join(failures) if failures else "; ".join(parts)
    return _finish("A7", "property suite", passed, detail, t0)


_CHECKS = (
    check_six_method_agreement,
    check_instability_reproduction,
    check_coefficient_anchor,
    check_asymptote_convergence,
    check_remainder_identity,
    check_pole_assembly,
    check_property_suite,
)


def run_acceptance(quick: bool = False, seed: int = 0) -> list:
    """Run A1-A7; a crash inside one check becomes a failed result."""
    results = []
    for fn in _CHECKS:
        kwargs = {"quick": quick}
        if fn in (check_pole_assembly, check_property_suite):
            kwargs["seed"] = seed
        t0 = time.perf_counter()
        try:
            results.append(fn(**kwargs))
        except Exception as exc:  # noqa: BLE001 - table must always complete
            detail = f"{type(exc).__name__}: {exc} | {traceback.format_exc(limit=2)}"
            results.append(
                CheckResult(f"A{_CHECKS.index(fn) + 1}", fn.__name__, False, detail,
                            time.perf_counter() - t0)
            )
    return results


def format_table(results: list) -> str:
    lines = []
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"[{r.criterion}] {status} {r.name} ({r.seconds:.1f}s) - {r.detail}")
    overall = "ALL PASS" if all(r.passed for r in results) else "FAILURES PRESENT"
    lines.append(overall)
    return "\n".join(lines)
