"""Six analytical evaluations of the string-loop radiation integral
I(N, alpha), plus its large-N asymptotics, verified against a brute-force
spherical quadrature oracle.

The integral is a full-sphere convolution of two singular-but-integrable
kernels f_N(e . z) whose Legendre spectrum is computable in closed form;
every route here is some rearrangement of that fact.  See README.md for
the method map.
"""

from .asympt import (
    AsymptoticBreakdown,
    asymptotic_i,
    eval_asymptotic,
    harmonic_limit_coeff,
    leading_log,
    pole_term,
    remainder_closed_form,
    remainder_series,
)
from .bench import AlphaGrid, BenchRecord, GridSpec, preset, run_grid, timing_summary
from .core import (
    Method,
    MethodResult,
    Problem,
    Provenance,
    SpectralCoeffs,
    funk_hecke_sum,
    power_spectrum,
    symmetry_partner,
)
from .errors import (
    ConvergenceFailure,
    DomainError,
    NumericalFailure,
    PrecisionFailure,
    SolverFailure,
    SphconvError,
    TruncationFailure,
)
from .gegenbauer import GegenbauerCoeffs, eval_method_6, gegenbauer_coeffs, solve_method_6
from .hiprec import NATIVE, PrecisionContext, cancellation_floor, certified, required_digits
from .methods import evaluate
from .monomial import (
    RotationRow,
    ScaledTaylorCoeffs,
    TaylorCoeffs,
    eval_method_1_2,
    eval_method_3,
    moment_j,
    moment_j_gaussian,
    monomial_to_legendre,
    rotation_row,
    scaled_taylor_coeffs,
    taylor_coeffs,
    truncation_m,
)
from .oracle import QuadratureSpec, coeff_oracle, f_kernel, integrate_2d
from .spectral import (
    TridiagonalSystem,
    build_galerkin,
    eval_method_4,
    eval_method_5,
    solve_method_4,
    solve_method_5,
)
from .verify import CheckResult, run_acceptance

__version__ = "0.1.0"

__all__ = [
    "AlphaGrid",
    "AsymptoticBreakdown",
    "BenchRecord",
    "CheckResult",
    "ConvergenceFailure",
    "DomainError",
    "GegenbauerCoeffs",
    "GridSpec",
    "Method",
    "MethodResult",
    "NATIVE",
    "NumericalFailure",
    "PrecisionContext",
    "PrecisionFailure",
    "Problem",
    "Provenance",
    "QuadratureSpec",
    "RotationRow",
    "ScaledTaylorCoeffs",
    "SolverFailure",
    "SpectralCoeffs",
    "SphconvError",
    "TaylorCoeffs",
    "TridiagonalSystem",
    "TruncationFailure",
    "asymptotic_i",
    "build_galerkin",
    "cancellation_floor",
    "certified",
    "coeff_oracle",
    "eval_asymptotic",
    "eval_method_1_2",
    "eval_method_3",
    "eval_method_4",
    "eval_method_5",
    "eval_method_6",
    "evaluate",
    "f_kernel",
    "funk_hecke_sum",
    "gegenbauer_coeffs",
    "harmonic_limit_coeff",
    "integrate_2d",
    "leading_log",
    "moment_j",
    "moment_j_gaussian",
    "monomial_to_legendre",
    "pole_term",
    "power_spectrum",
    "preset",
    "remainder_closed_form",
    "remainder_series",
    "required_digits",
    "rotation_row",
    "run_acceptance",
    "run_grid",
    "scaled_taylor_coeffs",
    "solve_method_4",
    "solve_method_5",
    "solve_method_6",
    "symmetry_partner",
    "taylor_coeffs",
    "timing_summary",
    "truncation_m",
]
