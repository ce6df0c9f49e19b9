"""Exception hierarchy shared across the package."""


class ChancapError(Exception):
    """Base class for all errors raised by chancap."""


class DimensionMismatch(ChancapError, ValueError):
    pass


class DimensionOverflow(ChancapError):
    """A construction would exceed the configured dimension cap."""


class NonHermitian(ChancapError, ValueError):
    pass


class NonConvergence(ChancapError, RuntimeError):
    pass


class InvalidState(ChancapError, ValueError):
    pass


class InvalidDistribution(ChancapError, ValueError):
    pass


class InvalidChannel(ChancapError, ValueError):
    """Malformed Kraus family, or one that is not trace preserving."""


class UnsupportedDimension(ChancapError, ValueError):
    pass


class DegenerateFactor(ChancapError, ValueError):
    pass


class MissingProfileField(ChancapError, KeyError):
    pass


class InfiniteArithmetic(ChancapError, ArithmeticError):
    """Multiplying or dividing by an infinite resource is undefined here."""


class InfeasibleProfile(ChancapError):
    """Lower bound exceeds upper bound somewhere along a sweep."""

    def __init__(self, message, coord=None, lower_tag=None, upper_tag=None):
        super().__init__(message)
        self.coord = coord
        self.lower_tag = lower_tag
        self.upper_tag = upper_tag


class InvalidProfile(ChancapError, ValueError):
    """A profile or resource value that cannot be interpreted at all."""
