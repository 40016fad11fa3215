"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`KernelODEError`. Validation problems additionally derive from
``ValueError`` so generic callers can catch them the usual way.
"""


class KernelODEError(Exception):
    """Base class for all package errors."""


class ValidationError(KernelODEError, ValueError):
    """Input failed a precondition."""


class NonMonotonicTime(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NonFiniteValue(ValidationError):
    pass


class TooShort(ValidationError):
    pass


class ZeroVariance(ValidationError):
    """A state coordinate is constant, so it cannot be standardized."""


class NonPositiveBandwidth(ValidationError):
    pass


class AllPointsIdentical(ValidationError):
    pass


class BadCount(ValidationError):
    pass


class UnsupportedDimension(ValidationError):
    pass


class ParseError(ValidationError):
    pass


class FormatVersionMismatch(ValidationError):
    pass


class NegativeCompartment(ValidationError):
    pass


class PopulationTooSmall(ValidationError):
    pass


class SingularSystem(KernelODEError):
    """The ridge system could not be solved to the required accuracy."""


class Diverged(KernelODEError):
    """A state or weight left the finite/bounded region.

    When raised by an integrator ``trajectory`` holds the part computed
    before the guard tripped.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class NotFittedError(KernelODEError, AttributeError):
    pass
