"""Exception hierarchy.

Domain errors signal unusable mathematical input (caller bug or bad CLI
arguments).  Numerical failures signal that a computation ran but could not
certify a finite, trustworthy result; they are the only way a method is
allowed to "return" a non-finite value.
"""


class SphconvError(Exception):
    """Base class for every error raised by this package."""


class DomainError(SphconvError, ValueError):
    """Input outside the mathematical domain of an operation."""


class NumericalFailure(SphconvError):
    """A computation could not produce a certified finite result."""


class PrecisionFailure(NumericalFailure):
    """Working precision is insufficient, or overflow/invalid arithmetic
    was detected while evaluating a cancellation-prone series."""


class ConvergenceFailure(NumericalFailure):
    """An adaptive quadrature refinement loop hit its limit before the
    requested tolerance was met."""


class TruncationFailure(NumericalFailure):
    """A series truncation search exceeded its safety cap."""


class SolverFailure(NumericalFailure):
    """A linear solve lost positive definiteness (non-positive pivot)."""
