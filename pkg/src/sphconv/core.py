"""Problem definition and shared spectral machinery.

The target quantity is the sphere integral

    I(N, alpha) = integral_{S^2} f_N(u . z) f_N(u . a) dOmega,

where z . a = cos(alpha) and f_N(t) = [1 - (-1)^N cos(N pi t)] / (1 - t^2).
Once the even-order Legendre coefficients C_{2j} of f_N are known, the
addition theorem for spherical harmonics collapses the integral to

    I = 4 pi sum_j C_{2j}^2 / (4j + 1) * P_{2j}(cos alpha),

which every spectral route funnels through (funk_hecke_sum).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .specfun import legendre_all

ALPHA_MIN = 1e-6

# Relative tail bound certifying that a coefficient vector was truncated
# deep enough for funk_hecke_sum to be converged.
TAIL_BOUND = 1e-14


@dataclass(frozen=True)
class Problem:
    """One (N, alpha) evaluation target.

    n is the harmonic index (positive integer; n = 0 makes the integrand
    identically zero and is rejected), alpha the angle between the two
    symmetry axes, clamped away from the poles where 1/sin(alpha) factors
    in downstream formulas degenerate.  ``a`` caches N pi in double
    precision; big-float routes recompute it at working precision.
    """

    n: int
    alpha: float
    a: float = field(init=False)

    def __post_init__(self) -> None:
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise DomainError(f"harmonic index must be an integer, got {self.n!r}")
        if self.n < 1:
            raise DomainError(
                "harmonic index must be >= 1 (n = 0 gives f_0 == 0 and I == 0)"
            )
        if not (ALPHA_MIN <= self.alpha <= math.pi - ALPHA_MIN):
            raise DomainError(
                f"alpha must lie in [{ALPHA_MIN}, pi - {ALPHA_MIN}], got {self.alpha}"
            )
        object.__setattr__(self, "a", self.n * math.pi)

    @property
    def parity(self) -> int:
        """(-1)^N."""
        return -1 if self.n % 2 else 1


class Method(str, enum.Enum):
    """The published evaluation routes plus the large-N estimate."""

    METHOD1 = "method1"
    METHOD2 = "method2"
    METHOD3 = "method3"
    GALERKIN = "galerkin"
    VOLTERRA = "volterra"
    GEGENBAUER = "gegenbauer"
    ASYMPTOTIC = "asymptotic"

    @classmethod
    def parse(cls, name: str) -> "Method":
        aliases = {
            "m1": cls.METHOD1,
            "m2": cls.METHOD2,
            "m3": cls.METHOD3,
            "m4": cls.GALERKIN,
            "m5": cls.VOLTERRA,
            "m6": cls.GEGENBAUER,
        }
        key = name.strip().lower()
        if key in aliases:
            return aliases[key]
        try:
            return cls(key)
        except ValueError:
            raise DomainError(f"unknown method {name!r}") from None


SPECTRAL_METHODS = (Method.GALERKIN, Method.VOLTERRA, Method.GEGENBAUER)
MONOMIAL_METHODS = (Method.METHOD1, Method.METHOD2, Method.METHOD3)


class Provenance(str, enum.Enum):
    GALERKIN = "galerkin"
    VOLTERRA = "volterra"
    GEGENBAUER = "gegenbauer"
    HYBRID_MONOMIAL = "hybrid_monomial"


@dataclass(frozen=True)
class SpectralCoeffs:
    """Even-order Legendre coefficients C_{2j} of f_N, j = 0..j_max."""

    c: np.ndarray
    j_max: int
    provenance: Provenance

    def __post_init__(self) -> None:
        if len(self.c) != self.j_max + 1:
            raise ValueError(
                f"coefficient vector has length {len(self.c)}, expected {self.j_max + 1}"
            )

    @property
    def c0(self) -> float:
        return float(self.c[0])

    def tail_is_converged(self) -> bool:
        """True when the last retained mode no longer moves the sphere sum."""
        peak = float(np.max(np.abs(self.c)))
        if peak == 0.0:
            return True
        return abs(float(self.c[-1])) / (4 * self.j_max + 1) < TAIL_BOUND * peak


@dataclass(frozen=True)
class MethodResult:
    """Outcome of one method evaluation.

    value is always finite; failures are raised as NumericalFailure
    subclasses, never smuggled through as NaN.
    """

    value: float
    method: Method
    truncation_order: int
    digits_used: int
    seconds: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError("MethodResult.value must be finite (raise instead)")


def funk_hecke_sum(coeffs: SpectralCoeffs, alpha: float) -> float:
    """Collapse a coefficient vector to I via the addition theorem:
    4 pi sum_j C_{2j}^2 / (4j+1) P_{2j}(cos alpha)."""
    if not (0.0 < alpha < math.pi):
        raise DomainError(f"alpha must lie strictly inside (0, pi), got {alpha}")
    p_even = legendre_all(math.cos(alpha), 2 * coeffs.j_max).values[::2]
    j = np.arange(coeffs.j_max + 1)
    weights = coeffs.c * coeffs.c / (4.0 * j + 1.0)
    return 4.0 * math.pi * float(np.dot(weights, p_even))


def power_spectrum(problem: Problem, g_mu_sq: float, i_value: float) -> float:
    """Radiated power in harmonic N for string tension parameter G mu^2:
    P_N = 32 G mu^2 / (pi^3 N^2) * I(N, alpha)."""
    return 32.0 * g_mu_sq / (math.pi ** 3 * problem.n ** 2) * i_value


def symmetry_partner(problem: Problem) -> Problem:
    """The reflected problem (N, pi - alpha); I is invariant under it."""
    return Problem(problem.n, math.pi - problem.alpha)
