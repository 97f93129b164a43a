"""Working-precision management for cancellation-prone series.

The Taylor-route evaluators subtract partial sums of magnitude ~e^A to
produce an O(1) answer (A = N pi), losing about A*log10(e) decimal digits
to cancellation.  This module sizes decimal working precision for a target
accuracy and runs deferred computations under either

* ``big_float``     -- mpmath arbitrary precision at ``decimal_digits``, or
* ``native_double`` -- machine arithmetic (extended 80-bit longdouble where
  the platform offers it, plain float64 otherwise), kept available to
  demonstrate how the unstable routes break down.

Contexts are immutable values.  mpmath precision is switched with a scoped
``workdps`` block, so computations must not share a context across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import mpmath as mp
import numpy as np

from .errors import PrecisionFailure

LOG10_E = 0.4342944819032518
TARGET_DIGITS = 16
SAFETY_MARGIN_DIGITS = 20
MIN_WORKING_DIGITS = 60

NATIVE_DOUBLE = "native_double"
BIG_FLOAT = "big_float"

_LONGDOUBLE_EXTENDED = np.finfo(np.longdouble).precision > np.finfo(np.float64).precision


@dataclass(frozen=True)
class PrecisionContext:
    """An immutable arithmetic-precision request.

    ``decimal_digits`` is the significand size big_float arithmetic will
    carry; native_double ignores it beyond bookkeeping.
    """

    decimal_digits: int = TARGET_DIGITS
    mode: str = BIG_FLOAT

    def __post_init__(self) -> None:
        if self.decimal_digits < 16:
            raise ValueError("decimal_digits must be at least 16")
        if self.mode not in (NATIVE_DOUBLE, BIG_FLOAT):
            raise ValueError(f"unknown precision mode {self.mode!r}")


NATIVE = PrecisionContext(TARGET_DIGITS, NATIVE_DOUBLE)


def required_digits(n: int, target_digits: int = TARGET_DIGITS) -> int:
    """Decimal working precision certifying ~target_digits output digits.

    Cancellation consumes ceil(N pi log10 e) digits; a fixed safety margin
    absorbs rounding accumulation, and the floor keeps small-N runs cheap
    to reason about while being far more than they need.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    loss = math.ceil(n * math.pi * LOG10_E)
    return max(MIN_WORKING_DIGITS, loss + target_digits + SAFETY_MARGIN_DIGITS)


def certified(n: int, target_digits: int = TARGET_DIGITS) -> PrecisionContext:
    """Big-float context sized by required_digits for harmonic n."""
    return PrecisionContext(required_digits(n, target_digits), BIG_FLOAT)


def cancellation_floor(n: int) -> int:
    """Digits below which the Taylor route carries no signal at all."""
    return math.ceil(n * math.pi * LOG10_E) + 2


class _BigFloatNumerics:
    """Minimal arithmetic surface used by the series evaluators.

    Valid only while the owning workdps block is active; mp.pi adapts to
    the active precision on use.
    """

    name = BIG_FLOAT

    @staticmethod
    def from_int(i: int):
        return mp.mpf(i)

    @staticmethod
    def from_float(x: float):
        return mp.mpf(x)

    pi = mp.pi

    @staticmethod
    def cos(x):
        return mp.cos(x)


class _NativeNumerics:
    name = NATIVE_DOUBLE

    from_int = staticmethod(np.longdouble if _LONGDOUBLE_EXTENDED else float)
    from_float = staticmethod(np.longdouble if _LONGDOUBLE_EXTENDED else float)

    # longdouble pi from a string so the extra bits are real
    pi = (
        np.longdouble("3.141592653589793238462643383279502884")
        if _LONGDOUBLE_EXTENDED
        else math.pi
    )

    cos = staticmethod(np.cos if _LONGDOUBLE_EXTENDED else math.cos)


def numerics(ctx: PrecisionContext):
    """Arithmetic backend for a context (use inside with_precision)."""
    return _BigFloatNumerics if ctx.mode == BIG_FLOAT else _NativeNumerics


def with_precision(ctx: PrecisionContext, computation: Callable[[], object]) -> float:
    """Run a deferred computation under ctx and round the result to float.

    Overflow or invalid arithmetic surfaces as PrecisionFailure; a non-finite
    result is never returned as if it were a value.
    """
    try:
        if ctx.mode == BIG_FLOAT:
            with mp.workdps(ctx.decimal_digits):
                out = float(computation())
        else:
            with np.errstate(over="ignore", invalid="ignore"):
                out = float(computation())
    except (OverflowError, ZeroDivisionError, mp.libmp.NoConvergence) as exc:
        raise PrecisionFailure(f"arithmetic failed under {ctx}: {exc}") from exc
    if not math.isfinite(out):
        raise PrecisionFailure(
            f"non-finite result under {ctx.mode} at {ctx.decimal_digits} digits"
        )
    return out
