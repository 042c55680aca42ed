"""Exception types shared across the library."""


class DynKCenterError(Exception):
    """Base class for all library errors."""


class StreamError(DynKCenterError):
    pass


class DuplicateArrival(StreamError):
    pass


class InvertedLifetime(StreamError):
    pass


class DistanceOutOfRange(StreamError):
    pass


class NonMonotoneArrival(StreamError):
    pass


class InvalidBounds(DynKCenterError):
    pass


class InvalidBeta(DynKCenterError):
    pass


class InvalidH(DynKCenterError):
    pass


class MetricError(DynKCenterError):
    pass


class IndexOutOfRange(MetricError):
    pass


class EmptyCenters(DynKCenterError):
    pass


class EmptyPoints(DynKCenterError):
    pass


class TooFewPoints(DynKCenterError):
    pass


class TooLargeForEnumeration(DynKCenterError):
    pass


class PointNotFound(DynKCenterError):
    """Handle resolution failed; indicates internal structure corruption."""


class NoFeasibleGuess(DynKCenterError):
    """No guess admits a solution; the declared d_max was too small."""


class InvariantViolation(DynKCenterError):
    """Raised by the audit suite with the invariant name and location."""

    def __init__(self, invariant, detail=""):
        self.invariant = invariant
        self.detail = detail
        super().__init__(f"{invariant}: {detail}" if detail else invariant)
