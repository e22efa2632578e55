"""Exception hierarchy shared by every MirrorPhase module."""

# Types.
from typing import Any, Optional


class MirrorPhaseError(Exception):
    """MirrorPhaseError Exception. Base of every error raised by this library."""


class InvalidParameterError(MirrorPhaseError):
    """InvalidParameterError Exception. Used when an argument is out of range or mismatched."""


class NumericDomainError(MirrorPhaseError):
    """NumericDomainError Exception. Used when a mirror map receives non-finite input."""


class NumericOverflowError(MirrorPhaseError):
    """NumericOverflowError Exception. Used when the inverse mirror map overflows."""

    def __init__(self, message: str, coordinate: int) -> None:
        """Constructor."""

        MirrorPhaseError.__init__(self, message)
        self.coordinate: int = coordinate


class DegenerateDataError(MirrorPhaseError):
    """DegenerateDataError Exception. Used when the observations carry no signal energy."""


class DivergedError(MirrorPhaseError):
    """
    DivergedError Exception.
    Used when an iterate leaves the representable range.
    Carries the partial Trajectory recorded before the failure.
    """

    def __init__(
        self,
        message: str,
        iteration: int,
        coordinate: int,
        trajectory: Optional[Any] = None,
    ) -> None:
        """Constructor."""

        MirrorPhaseError.__init__(self, message)
        self.iteration: int = iteration
        self.coordinate: int = coordinate
        self.trajectory: Optional[Any] = trajectory


class SweepFailureError(MirrorPhaseError):
    """SweepFailureError Exception. Used when every trial at an axis value failed."""

    def __init__(self, message: str, axis_value: float) -> None:
        """Constructor."""

        MirrorPhaseError.__init__(self, message)
        self.axis_value: float = axis_value
