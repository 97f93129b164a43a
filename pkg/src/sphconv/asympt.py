"""Large-N asymptotics of I(N, alpha).

For N -> infinity the Gegenbauer coefficients telescope through harmonic
numbers and the sphere sum collapses to a closed form:

    I(N, alpha) ~ (4 pi / sin^2 alpha) (gamma + ln(N pi sin alpha)
                                        + cos alpha ln tan(alpha/2)).

The O(1) remainder C(alpha) = ln sin(alpha) + cos(alpha) ln tan(alpha/2)
also has an exact discrete form, a conditionally convergent series over
squared harmonic numbers and order-1 associated Legendre functions; both
are kept and compared.  A pole-split variant K(alpha) reassembles the same
asymptote from the two collinear directions.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import MethodResult, Method, Problem
from .errors import DomainError
from .specfun import EULER_GAMMA, assoc_legendre1_all, harmonic


@dataclass(frozen=True)
class AsymptoticBreakdown:
    """Assembled large-N estimate with its bookkeeping split.

    leading_log carries L = gamma + ln(N pi) + ln 2; remainder carries
    C(alpha) - ln 2, so envelope*(leading_log + remainder) re-sums to value.
    """

    leading_log: float
    remainder: float
    envelope: float
    value: float


def _check_alpha(alpha: float) -> None:
    if not 0.0 < alpha < math.pi:
        raise DomainError(f"alpha must lie in (0, pi), got {alpha}")


def leading_log(n: int) -> float:
    """L = gamma + ln(n pi) + ln 2."""
    if n < 1:
        raise DomainError("n must be a positive integer")
    return EULER_GAMMA + math.log(n * math.pi) + math.log(2.0)


def remainder_closed_form(alpha: float) -> float:
    """C(alpha) = ln sin(alpha) + cos(alpha) ln tan(alpha/2).

    Symmetric under alpha -> pi - alpha (both factors flip sign together).
    """
    _check_alpha(alpha)
    return math.log(math.sin(alpha)) + math.cos(alpha) * math.log(math.tan(alpha / 2))


def asymptotic_i(problem: Problem) -> AsymptoticBreakdown:
    """Master asymptotic estimate of I at the problem's (N, alpha)."""
    alpha = problem.alpha
    sin_a = math.sin(alpha)
    envelope = 4.0 * math.pi / (sin_a * sin_a)
    value = envelope * (
        EULER_GAMMA
        + math.log(problem.n * math.pi * sin_a)
        + math.cos(alpha) * math.log(math.tan(alpha / 2))
    )
    return AsymptoticBreakdown(
        leading_log=leading_log(problem.n),
        remainder=remainder_closed_form(alpha) - math.log(2.0),
        envelope=envelope,
        value=value,
    )


def pole_term(alpha: float, n: int) -> float:
    """K(alpha) = 4 pi / (1 - cos alpha) * (L + ln sin^2(alpha/2)).

    Averaging the term with its antipode reproduces the full asymptote:
    I ~ (K(alpha) + K(pi - alpha)) / 2.
    """
    _check_alpha(alpha)
    big_l = leading_log(n)
    half = math.sin(alpha / 2)
    return 4.0 * math.pi / (1.0 - math.cos(alpha)) * (big_l + math.log(half * half))


def harmonic_limit_coeff(m: int) -> float:
    """Limit of the Gegenbauer coefficient b_{2m} as N -> infinity:

        (4m+3)/((2m+1)(2m+2)) = 1/(2m+1) + 1/(2m+2) = H_{2m+2} - H_{2m}.
    """
    if m < 0:
        raise DomainError("m must be non-negative")
    coeff = (4 * m + 3) / ((2 * m + 1) * (2 * m + 2))
    check = harmonic(2 * m + 2) - harmonic(2 * m)
    assert math.isclose(coeff, check, rel_tol=1e-12), (coeff, check)
    return coeff


def remainder_series(alpha: float, j_max: int) -> float:
    """C(alpha) through the exact discrete spectral remainder:

        ln 2 + sin(alpha) sum_j (H_{2j+2}^2 - H_{2j}^2) P^1_{2j+1}(cos alpha).

    The terms decay like ln j / sqrt(j) while oscillating, so the raw
    partial sums converge too slowly to be useful.  Two Cesaro averaging
    passes over a window of a few oscillation periods (~pi/alpha indices
    per period; one period alone leaves a few-1e-2 residual near alpha = 2)
    stabilize the tail to ~1e-3 by j_max = 1e4.
    """
    _check_alpha(alpha)
    if j_max < 100:
        raise DomainError("j_max must be at least 100")
    sin_a = math.sin(alpha)
    l_max = 2 * j_max + 1
    p1 = assoc_legendre1_all(math.cos(alpha), sin_a, l_max).values
    h_all = np.concatenate([[0.0], np.cumsum(1.0 / np.arange(1.0, l_max + 2.0))])
    j = np.arange(j_max + 1)
    coeffs = h_all[2 * j + 2] ** 2 - h_all[2 * j] ** 2
    partial = math.log(2.0) + sin_a * np.cumsum(coeffs * p1[1::2])

    window = max(6, 3 * round(math.pi / alpha))
    window = max(2, min(window, (j_max + 1) // 2))
    first_pass = np.convolve(partial, np.full(window, 1.0 / window), mode="valid")
    return float(np.mean(first_pass[-window:]))


def eval_asymptotic(problem: Problem) -> MethodResult:
    """Asymptotic estimate wrapped as a MethodResult (truncation-free)."""
    t0 = time.perf_counter()
    value = asymptotic_i(problem).value
    dt = time.perf_counter() - t0
    return MethodResult(value, Method.ASYMPTOTIC, 0, 16, dt)
