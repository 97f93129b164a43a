"""Monomial-basis routes (the historically first, unstable ones).

Expanding both kernel factors as even Taylor series f_N(t) = sum d_{2k} t^{2k}
turns I(N, alpha) into sum_{k,j} d_{2k} d_{2j} J_{2k,2j}(alpha), where
J_{2k,2j} is the sphere moment of e1^{2k} e2^{2j}.  Two independent moment
derivations (generating function vs Gaussian lifting) are kept as mutual
oracles.  The production evaluator groups the double sum by total degree
K = k + j and carries factorially rescaled quantities:

    b_m       = (2m)! d_{2m}           (backward recurrence, Miller style)
    Hhat_K(a) = [z^a] (1 + 2Cz + z^2)^K / (2K)!,   C = cos(alpha)

    I = 4 pi sum_K 1/(2K+1) sum_m b_m b_{K-m} Hhat_K(2m).

Everything cancels in pairs of size ~e^A, so the pipeline runs under an
explicit precision context sized by hiprec.required_digits.  A third route
re-projects the Taylor series onto Legendre polynomials through the exact
rational matrix T_{k,m} and reuses the spectral sphere sum.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath as mp
import numpy as np

from . import hiprec
from .core import MethodResult, Method, Problem, Provenance, SpectralCoeffs, funk_hecke_sum
from .errors import DomainError, PrecisionFailure, TruncationFailure
from .specfun import gamma_half_integer


# ---------------------------------------------------------------------------
# Taylor coefficients of f_N

@dataclass(frozen=True)
class TaylorCoeffs:
    """d_{2k} for k = 0..k_max, stored at the precision they were built at."""

    values: tuple
    k_max: int
    n: int

    def __post_init__(self) -> None:
        if len(self.values) != self.k_max + 1:
            raise ValueError("values length must be k_max + 1")


def taylor_coeffs(problem: Problem, k_max: int, ctx: hiprec.PrecisionContext) -> TaylorCoeffs:
    """d_0 = 1 - (-1)^N and d_{2k} = d_{2k-2} - (-1)^{N+k} A^{2k} / (2k)!.

    The running partial sums peak near e^A before collapsing back to O(1),
    which is exactly why ctx has to carry the cancellation budget.
    """

    def build():
        nm = hiprec.numerics(ctx)
        a = nm.from_int(problem.n) * nm.pi
        a2 = a * a
        parity = problem.parity
        d = [nm.from_int(1 - parity)]
        u = nm.from_int(1)  # A^{2k} / (2k)!
        for k in range(1, k_max + 1):
            u = u * a2 / ((2 * k - 1) * (2 * k))
            sign = -parity * (1 if k % 2 == 0 else -1)
            d.append(d[-1] + sign * u)
        return tuple(d)

    if ctx.mode == hiprec.BIG_FLOAT:
        with mp.workdps(ctx.decimal_digits):
            values = build()
    else:
        values = build()
    return TaylorCoeffs(values, k_max, problem.n)


# ---------------------------------------------------------------------------
# Sphere moments of e1^{2k} e2^{2j}: two independent rational closed forms

def moment_j(k: int, j: int, cos_alpha: float) -> float:
    """J_{2k,2j} from the generating function 4 pi sinh(K)/K, where
    K^2 = lambda^2 + mu^2 + 2 lambda mu cos(alpha):

        J = 4 pi (2k)!(2j)!/(2k+2j+1)! *
            sum_rho (k+j)! / ((k-rho)!(j-rho)!(2rho)!) (2 cos alpha)^{2rho}.
    """
    if k < 0 or j < 0:
        raise DomainError("moment orders must be non-negative")
    s = k + j
    two_c = 2.0 * cos_alpha
    total = 0.0
    for rho in range(min(k, j) + 1):
        coef = Fraction(
            math.factorial(s),
            math.factorial(k - rho) * math.factorial(j - rho) * math.factorial(2 * rho),
        )
        total += float(coef) * two_c ** (2 * rho)
    pref = Fraction(
        4 * math.factorial(2 * k) * math.factorial(2 * j), math.factorial(2 * s + 1)
    )
    return math.pi * float(pref) * total


def moment_j_gaussian(k: int, j: int, cos_alpha: float) -> float:
    """Same moment by lifting the sphere to a Gaussian over R^3:

        J = 2 M / Gamma(k + j + 3/2),
        M = pi^{3/2} d^{2k}_lambda d^{2j}_mu exp[(lambda^2+mu^2+2 lambda mu c)/4].
    """
    if k < 0 or j < 0:
        raise DomainError("moment orders must be non-negative")
    two_c = 2.0 * cos_alpha
    inner = 0.0
    for rho in range(min(k, j) + 1):
        coef = Fraction(
            1,
            math.factorial(k - rho) * math.factorial(j - rho) * math.factorial(2 * rho),
        )
        inner += float(coef) * two_c ** (2 * rho)
    m_val = (
        math.pi ** 1.5
        * float(Fraction(math.factorial(2 * k) * math.factorial(2 * j), 4 ** (k + j)))
        * inner
    )
    return 2.0 * m_val / gamma_half_integer(k + j)


# ---------------------------------------------------------------------------
# Truncation search

def truncation_cap(problem: Problem, target_digits: int) -> int:
    return max(100, math.ceil(2.0 * problem.a + 5.0 * target_digits))


def truncation_m(problem: Problem, target_digits: int = hiprec.TARGET_DIGITS) -> int:
    """Smallest M such that the dropped Taylor tail sits below 10^-target.

    Walks log T_j = 2j ln A - ln (2j)! until the term has both passed its
    peak (2j > A) and fallen under the threshold; M = j_stop - 2 then makes
    the backward-recurrence seed error itself a below-threshold term.
    """
    if target_digits < 1:
        raise DomainError("target_digits must be positive")
    a = problem.a
    log_eps = -target_digits * math.log(10.0)
    log_a_sq = 2.0 * math.log(a)
    cap = truncation_cap(problem, target_digits)
    log_t = 0.0
    j = 0
    while True:
        if log_t < log_eps and 2 * j > a:
            return max(j - 2, 0)
        j += 1
        if j > cap:
            raise TruncationFailure(
                f"truncation search for N = {problem.n} exceeded the safety cap {cap}"
            )
        log_t += log_a_sq - math.log(2 * j) - math.log(2 * j - 1)


# ---------------------------------------------------------------------------
# Scaled Taylor coefficients b_m = (2m)! d_{2m}

@dataclass(frozen=True)
class ScaledTaylorCoeffs:
    """b_m for m = 0..m_trunc, at working precision.

    Satisfies (2m+1)(2m+2) b_m - b_{m+1} - (-1)^{N+m+1} A^{2m+2} = 0 with
    b_{m_trunc+1} treated as 0 (justified by the truncation_m criterion).
    """

    values: tuple
    m_trunc: int
    n: int

    def __post_init__(self) -> None:
        if len(self.values) != self.m_trunc + 1:
            raise ValueError("values length must be m_trunc + 1")


def _scaled_taylor_values(n: int, a, m_trunc: int, nm) -> list:
    a2 = a * a
    a_pow = a2 ** (m_trunc + 1)            # A^{2m+2} at m = m_trunc
    sign = 1 if (n + m_trunc + 1) % 2 == 0 else -1
    b = [None] * (m_trunc + 1)
    b_next = nm.from_int(0)
    for m in range(m_trunc, -1, -1):
        b_next = (b_next + sign * a_pow) / ((2 * m + 1) * (2 * m + 2))
        b[m] = b_next
        a_pow = a_pow / a2
        sign = -sign
    return b


def scaled_taylor_coeffs(problem: Problem, m_trunc: int,
                         ctx: hiprec.PrecisionContext) -> ScaledTaylorCoeffs:
    """Backward (contracting) solve of the b_m recurrence from a zero seed."""
    if m_trunc < 0:
        raise DomainError("m_trunc must be non-negative")

    def build():
        nm = hiprec.numerics(ctx)
        a = nm.from_int(problem.n) * nm.pi
        return tuple(_scaled_taylor_values(problem.n, a, m_trunc, nm))

    if ctx.mode == hiprec.BIG_FLOAT:
        with mp.workdps(ctx.decimal_digits):
            values = build()
    else:
        values = build()
    return ScaledTaylorCoeffs(values, m_trunc, problem.n)


# ---------------------------------------------------------------------------
# Rescaled rotation-moment rows Hhat_K(a) and the convolution evaluator

@dataclass(frozen=True)
class RotationRow:
    """Row K of Hhat, stored as the half a = 0..K (the row is palindromic)."""

    k: int
    h: tuple

    def __post_init__(self) -> None:
        if len(self.h) != self.k + 1:
            raise ValueError("stored half must have length k + 1")

    def value(self, a: int) -> float:
        if a < 0 or a > 2 * self.k:
            return 0.0
        return self.h[a] if a <= self.k else self.h[2 * self.k - a]

    def full_sum(self) -> float:
        return sum(self.value(a) for a in range(2 * self.k + 1))


def _advance_row(row: list, k: int, two_c, nm) -> list:
    """Row K -> row K+1 of Hhat via the trinomial convolution, dividing by
    (2K+1)(2K+2) to keep the factorial rescaling in step."""
    d = nm.from_int((2 * k + 1) * (2 * k + 2))
    new = [None] * (k + 2)
    new[0] = row[0] / d
    if k == 0:
        new[1] = two_c * row[0] / d
        return new
    new[1] = (row[1] + two_c * row[0]) / d
    for a in range(2, k + 1):
        new[a] = (row[a - 2] + row[a] + two_c * row[a - 1]) / d
    new[k + 1] = (2 * row[k - 1] + two_c * row[k]) / d
    return new


def rotation_row(k: int, cos_alpha: float) -> RotationRow:
    """Hhat row K in plain doubles (test/inspection surface)."""
    if k < 0:
        raise DomainError("row index must be non-negative")
    nm = hiprec.numerics(hiprec.NATIVE)
    row = [nm.from_int(1)]
    two_c = nm.from_float(2.0 * cos_alpha)
    for kk in range(k):
        row = _advance_row(row, kk, two_c, nm)
    return RotationRow(k, tuple(float(v) for v in row))


def _convolution_value(n: int, alpha: float, m_trunc: int, nm):
    a = nm.from_int(n) * nm.pi
    two_c = 2 * nm.cos(nm.from_float(alpha))
    b = _scaled_taylor_values(n, a, m_trunc, nm)
    row = [nm.from_int(1)]
    total = b[0] * b[0]                    # K = 0 term
    for kk in range(2 * m_trunc):
        row = _advance_row(row, kk, two_c, nm)
        big_k = kk + 1
        s = None
        for m in range(max(0, big_k - m_trunc), big_k // 2 + 1):
            term = b[m] * b[big_k - m] * row[2 * m]
            if m < big_k - m:
                term = term + term     # palindromic partner Hhat(2(K-m))
            s = term if s is None else s + term
        if s is not None:
            total = total + s / (2 * big_k + 1)
    return 4 * nm.pi * total


def _check_big_float_budget(problem: Problem, ctx: hiprec.PrecisionContext) -> None:
    if ctx.mode == hiprec.BIG_FLOAT:
        floor = hiprec.cancellation_floor(problem.n)
        if ctx.decimal_digits <= floor:
            raise PrecisionFailure(
                f"{ctx.decimal_digits} digits cannot survive the ~{floor}-digit "
                f"cancellation at N = {problem.n}; raise --digits "
                f"(required_digits gives {hiprec.required_digits(problem.n)})"
            )


def eval_method_1_2(problem: Problem, ctx: hiprec.PrecisionContext | None = None,
                    target_digits: int = hiprec.TARGET_DIGITS,
                    label: Method = Method.METHOD1) -> MethodResult:
    """Certified Taylor-route evaluation of I(N, alpha).

    Methods 1 and 2 differ only in how the sphere moments were derived;
    both collapse to this rescaled convolution.  In big_float mode a digit
    budget below the cancellation floor fails fast; native mode runs on
    best effort (valid up to N ~ 8) and raises only if arithmetic leaves
    the finite range.
    """
    if label not in (Method.METHOD1, Method.METHOD2):
        raise DomainError(f"label must be method1 or method2, got {label}")
    if ctx is None:
        ctx = hiprec.certified(problem.n, target_digits)
    t0 = time.perf_counter()
    m_trunc = truncation_m(problem, target_digits)
    _check_big_float_budget(problem, ctx)
    nm = hiprec.numerics(ctx)
    value = hiprec.with_precision(
        ctx, lambda: _convolution_value(problem.n, problem.alpha, m_trunc, nm)
    )
    dt = time.perf_counter() - t0
    return MethodResult(value, label, m_trunc, ctx.decimal_digits, dt)


# ---------------------------------------------------------------------------
# Method 3: exact monomial -> Legendre re-projection

@lru_cache(maxsize=512)
def monomial_to_legendre(k: int) -> tuple:
    """Exact rationals T_{k,m} with t^{2k} = sum_m T_{k,m} P_{2m}(t):

        T_{k,m} = (4m+1) 4^m (2k)! (k+m)! / ((k-m)! (2k+2m+1)!).

    Rows are positive and sum to 1 (value at t = 1).
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    fact_2k = math.factorial(2 * k)
    row = []
    for m in range(k + 1):
        row.append(
            Fraction(
                (4 * m + 1) * 4 ** m * fact_2k * math.factorial(k + m),
                math.factorial(k - m) * math.factorial(2 * k + 2 * m + 1),
            )
        )
    return tuple(row)


def eval_method_3(problem: Problem, ctx: hiprec.PrecisionContext | None = None,
                  target_digits: int = hiprec.TARGET_DIGITS,
                  k_max: int | None = None) -> MethodResult:
    """Taylor coefficients re-expanded over P_{2m}, then the spectral sphere
    sum.  Same cancellation budget as the other monomial routes: the d_{2k}
    swing through ~e^A before the T-weighted sums collapse to O(1)."""
    if ctx is None:
        ctx = hiprec.certified(problem.n, target_digits)
    t0 = time.perf_counter()
    if k_max is None:
        k_max = truncation_m(problem, target_digits)
    _check_big_float_budget(problem, ctx)

    def build():
        nm = hiprec.numerics(ctx)
        d = taylor_coeffs(problem, k_max, ctx).values
        acc = [nm.from_int(0) for _ in range(k_max + 1)]
        for k in range(k_max + 1):
            dk = d[k]
            for m, t_km in enumerate(monomial_to_legendre(k)):
                if ctx.mode == hiprec.BIG_FLOAT:
                    t_val = mp.mpf(t_km.numerator) / t_km.denominator
                else:
                    t_val = nm.from_float(float(t_km))
                acc[m] = acc[m] + dk * t_val
        return [float(v) for v in acc]

    if ctx.mode == hiprec.BIG_FLOAT:
        with mp.workdps(ctx.decimal_digits):
            c_floats = build()
    else:
        c_floats = build()
    c = np.array(c_floats)
    if not np.all(np.isfinite(c)):
        raise PrecisionFailure(
            f"monomial re-projection overflowed at N = {problem.n} under {ctx.mode}"
        )
    coeffs = SpectralCoeffs(c, k_max, Provenance.HYBRID_MONOMIAL)
    value = funk_hecke_sum(coeffs, problem.alpha)
    if not math.isfinite(value):
        raise PrecisionFailure("sphere sum left the finite range")
    dt = time.perf_counter() - t0
    return MethodResult(value, Method.METHOD3, k_max, ctx.decimal_digits, dt)
