"""Special-function substrate.

Whole families of classical functions evaluated by stable recurrences:

* Legendre polynomials P_l(x) and their derivatives,
* associated Legendre functions P^1_l(x) = -sqrt(1-x^2) P_l'(x),
* Gegenbauer polynomials C_k^(3/2)(x) = P'_{k+1}(x),
* spherical Bessel functions j_l(x) by a downward Miller recurrence,
* the complementary cosine integral Cin(z) = integral_0^z (1-cos t)/t dt,
* harmonic numbers and half-integer Gamma values.

Every family function returns the full vector of orders 0..order_max,
because callers always consume whole expansions; single-order wrappers
would just re-run the recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import DomainError

EULER_GAMMA = 0.5772156649015328606


@dataclass(frozen=True)
class PolySequence:
    """A family of function values indexed by order 0..order_max."""

    order_max: int
    values: np.ndarray

    def __post_init__(self) -> None:
        if self.order_max < 0:
            raise DomainError("order_max must be non-negative")
        if len(self.values) != self.order_max + 1:
            raise ValueError(
                f"values has length {len(self.values)}, expected {self.order_max + 1}"
            )

    def __len__(self) -> int:
        return self.order_max + 1

    def __getitem__(self, order):
        return self.values[order]


def legendre_all(x: float, l_max: int) -> PolySequence:
    """P_0(x)..P_{l_max}(x) by the three-term upward recurrence.

    The recurrence (l+1) P_{l+1} = (2l+1) x P_l - l P_{l-1} is stable on
    [-1, 1] for the polynomial solution.
    """
    if abs(x) > 1.0:
        raise DomainError(f"Legendre argument |x| <= 1 required, got {x}")
    p = np.empty(l_max + 1)
    p[0] = 1.0
    if l_max >= 1:
        p[1] = x
    for l in range(1, l_max):
        p[l + 1] = ((2 * l + 1) * x * p[l] - l * p[l - 1]) / (l + 1)
    return PolySequence(l_max, p)


def legendre_deriv_all(x: float, l_max: int) -> PolySequence:
    """P_0'(x)..P_{l_max}'(x) for x strictly inside (-1, 1).

    Uses (1-x^2) P_l' = l (P_{l-1} - x P_l).  At the endpoints the division
    degenerates; callers there must use P_l'(+-1) = (+-1)^{l+1} l(l+1)/2.
    """
    if abs(x) >= 1.0:
        raise DomainError("legendre_deriv_all requires |x| < 1; use the endpoint closed form")
    p = legendre_all(x, l_max).values
    dp = np.empty(l_max + 1)
    dp[0] = 0.0
    if l_max >= 1:
        ls = np.arange(1, l_max + 1, dtype=float)
        dp[1:] = ls * (p[:-1] - x * p[1:]) / (1.0 - x * x)
    return PolySequence(l_max, dp)


def assoc_legendre1_all(cos_alpha: float, sin_alpha: float, l_max: int) -> PolySequence:
    """Order-1 associated Legendre functions P^1_l(cos alpha), l = 0..l_max.

    Convention P^1_l(x) = -sqrt(1-x^2) d/dx P_l(x) (Condon-Shortley sign).
    Both cos_alpha and sin_alpha are taken explicitly so the caller controls
    the sqrt branch; they must describe a genuine angle in (0, pi).
    """
    if sin_alpha <= 0.0:
        raise DomainError("sin_alpha must be positive (angle strictly inside (0, pi))")
    if abs(cos_alpha * cos_alpha + sin_alpha * sin_alpha - 1.0) > 1e-12:
        raise DomainError("cos_alpha, sin_alpha do not describe an angle")
    dp = legendre_deriv_all(cos_alpha, l_max).values
    return PolySequence(l_max, -sin_alpha * dp)


def gegenbauer32_all(x: float, m_max: int) -> PolySequence:
    """Gegenbauer polynomials C_k^(3/2)(x) for k = 0..m_max.

    Computed through C_k^(3/2)(x) = P'_{k+1}(x).  At x = +-1 exactly the
    derivative recurrence degenerates and the closed form
    C_k^(3/2)(+-1) = (+-1)^k (k+1)(k+2)/2 is used instead.
    """
    if abs(x) > 1.0:
        raise DomainError(f"Gegenbauer argument |x| <= 1 required, got {x}")
    k = np.arange(m_max + 1, dtype=float)
    if x == 1.0 or x == -1.0:
        vals = (k + 1.0) * (k + 2.0) / 2.0
        if x == -1.0:
            vals = vals * np.where(np.arange(m_max + 1) % 2 == 0, 1.0, -1.0)
        return PolySequence(m_max, vals)
    dp = legendre_deriv_all(x, m_max + 1).values
    return PolySequence(m_max, dp[1:].copy())


# Downward Miller recurrence for spherical Bessel functions.  The seed is
# arbitrary; contamination by the exploding second solution y_l decays by
# many orders of magnitude over the start offset below, and the whole run
# is rescaled by an exact power of two whenever it threatens to overflow.
_RESCALE = 2.0 ** -960
_RESCALE_TRIGGER = 2.0 ** 900


def spherical_bessel_all(x: float, l_max: int) -> PolySequence:
    """j_0(x)..j_{l_max}(x) for x > 0 by downward Miller recurrence.

    Recursion j_{l-1} = (2l+1)/x j_l - j_{l+1} runs from
    l_start = max(l_max, ceil(x)) + ceil(15 + 10 x^(1/3)) down to 0 and
    the result is normalized against j_0 = sin(x)/x, or against
    j_1 = sin(x)/x^2 - cos(x)/x when |sin x| is small (x near a multiple
    of pi, where j_0 nearly vanishes).  The start index must clear the
    turning point l ~ x by the full offset: contamination by the growing
    companion solution only decays while l > x, so anchoring the offset
    at l_max alone would leave small-l_max requests at large x unstable.
    Entries whose true magnitude underflows double precision come back
    as 0.
    """
    if x <= 0.0:
        raise DomainError(f"spherical_bessel_all requires x > 0, got {x}")
    if l_max < 0:
        raise DomainError("l_max must be non-negative")
    l_start = max(l_max, int(math.ceil(x))) + int(math.ceil(15.0 + 10.0 * x ** (1.0 / 3.0)))
    vals = np.zeros(l_max + 1)
    jp = 0.0       # unnormalized j at order l+1
    jc = 1e-300    # unnormalized j at order l (tiny seed delays overflow)
    j0_raw = 0.0
    j1_raw = 0.0
    for l in range(l_start, -1, -1):
        if l <= l_max:
            vals[l] = jc
        if l == 1:
            j1_raw = jc
        if l == 0:
            j0_raw = jc
            break
        jm = (2 * l + 1) / x * jc - jp
        jp, jc = jc, jm
        if abs(jc) > _RESCALE_TRIGGER:
            jc *= _RESCALE
            jp *= _RESCALE
            j1_raw *= _RESCALE
            vals *= _RESCALE
    sin_x = math.sin(x)
    if abs(sin_x) > 0.5 or j1_raw == 0.0:
        scale = (sin_x / x) / j0_raw
    else:
        scale = (sin_x / (x * x) - math.cos(x) / x) / j1_raw
    return PolySequence(l_max, vals * scale)


_CIN_SERIES_CUTOFF = 30.0


def cin(z: float) -> float:
    """Complementary cosine integral Cin(z) = integral_0^z (1 - cos t)/t dt.

    The alternating series sum_{k>=1} (-1)^{k+1} z^{2k} / (2k (2k)!) loses
    about z*log10(e) digits to cancellation, so for z <= 30 it is summed in
    guarded big-float arithmetic and rounded once at the end.  Beyond 30 the
    asymptotic auxiliary expansion of Ci(z) is accurate past 1e-13 and
    Cin(z) = gamma + ln z - Ci(z) is used directly.
    """
    if z < 0.0:
        raise DomainError(f"cin requires z >= 0, got {z}")
    if z == 0.0:
        return 0.0
    if z <= _CIN_SERIES_CUTOFF:
        with mp.workdps(50):
            zz = mp.mpf(z)
            z2 = zz * zz
            u = z2 / 2          # z^{2k} / (2k)! at k = 1
            acc = u / 2         # term k=1: + z^2 / (2 * 2!)
            k = 1
            while True:
                k += 1
                u = u * z2 / ((2 * k - 1) * (2 * k))
                term = u / (2 * k)
                acc += term if k % 2 == 1 else -term
                if u < mp.mpf("1e-45") * (1 + abs(acc)):
                    break
            return float(acc)
    return EULER_GAMMA + math.log(z) - _ci_asymptotic(z)


def _ci_asymptotic(z: float) -> float:
    """Ci(z) = f(z) sin z - g(z) cos z from the divergent auxiliary series,
    truncated at the smallest term (error ~ e^{-z}, negligible for z > 30)."""
    z2 = z * z
    f_sum = 0.0
    g_sum = 0.0
    tf = 1.0   # (2k)!   / z^{2k}
    tg = 1.0   # (2k+1)! / z^{2k}
    sign = 1.0
    k = 0
    while True:
        f_sum += sign * tf
        g_sum += sign * tg
        tf_next = tf * (2 * k + 1) * (2 * k + 2) / z2
        tg_next = tg * (2 * k + 2) * (2 * k + 3) / z2
        if tf_next >= tf or tg_next >= tg:
            break
        tf, tg = tf_next, tg_next
        sign = -sign
        k += 1
    f = f_sum / z
    g = g_sum / z2
    return f * math.sin(z) - g * math.cos(z)


def harmonic(k: int) -> float:
    """Harmonic number H_k = sum_{i=1}^k 1/i, with H_0 = 0."""
    if k < 0:
        raise DomainError("harmonic number index must be non-negative")
    return float(np.sum(1.0 / np.arange(1, k + 1)))


def harmonic_all(k_max: int) -> np.ndarray:
    """Vector [H_0, H_1, ..., H_{k_max}]."""
    if k_max < 0:
        raise DomainError("k_max must be non-negative")
    h = np.empty(k_max + 1)
    h[0] = 0.0
    if k_max >= 1:
        h[1:] = np.cumsum(1.0 / np.arange(1, k_max + 1))
    return h


def gamma_half_integer(n: int) -> float:
    """Gamma(n + 3/2) = (2n+1)!! sqrt(pi) / 2^{n+1}, exact double-factorial form."""
    if n < 0:
        raise DomainError("gamma_half_integer requires n >= 0")
    df = 1
    for i in range(3, 2 * n + 2, 2):
        df *= i
    return df * math.sqrt(math.pi) / 2.0 ** (n + 1)
