"""Exception types shared across the package."""

from __future__ import annotations


class ToepcondError(Exception):
    """Base class for all package-specific failures."""


class PowerIterationError(ToepcondError):
    """Power iteration hit its iteration cap before converging.

    Carries the last Rayleigh-quotient estimate so callers can decide
    whether the partial value is still usable.
    """

    def __init__(self, message: str, last_value: float, iterations: int):
        super().__init__(message)
        self.last_value = last_value
        self.iterations = iterations


class SingularMatrixError(ToepcondError):
    """Gaussian elimination met a pivot below the singularity threshold."""


class SingularSymbolError(ToepcondError):
    """A power series with (near-)zero constant term cannot be inverted."""


class BezoutPairError(ToepcondError):
    """The product of a symbol and its claimed reciprocal is not 1 mod z^n."""


class QuadratureAccuracyError(ToepcondError):
    """Circle quadrature failed to reach the required accuracy.

    Carries the last sample count tried and the Gram-matrix deviation it
    achieved; the fix is a larger sample count.
    """

    def __init__(self, message: str, m_last: int, deviation: float):
        super().__init__(message)
        self.m_last = m_last
        self.deviation = deviation


class ExtremalityError(ToepcondError):
    """A model operator failed its norm-equality checks."""


class TwoPathMismatchError(ToepcondError):
    """The two independent inverse-norm computations disagree."""


class SearchFailureError(ToepcondError):
    """The extremal search found no feasible candidate (internal error)."""
