"""Exception taxonomy.

Two families matter to callers: ParameterError (bad inputs, caught early,
CLI exit code 2) and NumericalError (a computation that started from valid
inputs could not finish, CLI exit code 3).
"""

from __future__ import annotations


class RoadspeedError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(RoadspeedError, ValueError):
    """Invalid parameters, kernels, grids or configuration."""


class DomainTooSmallError(ParameterError):
    """A sampling or solve domain does not cover the kernel support."""


class InvalidGridError(ParameterError):
    """A grid is too coarse or otherwise malformed."""


class SubcriticalSpeedError(ParameterError):
    """A speed below the open-field minimum was passed where c >= c_kpp is required."""


class BelowThresholdError(ParameterError):
    """The road diffusivity is at or below the threshold, so no crossing speed exists."""


class DomainError(ParameterError):
    """A decay rate lies outside the window where the field problem is coercive."""


class ResolutionError(ParameterError):
    """A solver grid is below the supported resolution floor."""


class NumericalError(RoadspeedError, RuntimeError):
    """A numerical procedure failed despite valid inputs."""


class BracketFailureError(NumericalError):
    """A bisection bracket did not enclose a sign change."""


class InstabilityError(NumericalError):
    """A time integration produced non-finite or runaway values."""


class FrontReachedBoundaryError(NumericalError):
    """The tracked front came too close to the artificial domain edge."""
