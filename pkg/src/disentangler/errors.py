"""Shared exception types."""


class DisentanglerError(ValueError):
    """Base class for all domain errors raised by this package."""


class NotHermitianError(DisentanglerError):
    pass


class DimensionMismatchError(DisentanglerError):
    pass


class NotDensityMatrixError(DisentanglerError):
    pass


class NormalizationError(DisentanglerError):
    pass


class BlochNormError(DisentanglerError):
    pass


class InfeasibleMachineError(DisentanglerError):
    pass


class DegenerateInputError(DisentanglerError):
    """Reduced input state is maximally mixed; a shrink factor is undefined."""

    def __init__(self, sides):
        self.sides = tuple(sides)
        super().__init__(f"shrink factor undefined for side(s): {', '.join(self.sides)}")


class DomainError(DisentanglerError):
    pass
