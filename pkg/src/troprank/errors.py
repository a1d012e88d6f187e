"""Exception hierarchy shared by every module of the package."""


class TropError(Exception):
    """Base class for all package errors."""


class DimensionError(TropError, ValueError):
    pass


class GuardError(TropError, ValueError):
    """Input exceeds a size guard of an exhaustive search."""


class ParseError(TropError, ValueError):
    pass


class PreconditionError(TropError, ValueError):
    pass


class ZeroEntryError(TropError, ValueError):
    """A lift matrix contains the zero element."""


class PatternMismatch(PreconditionError):
    pass


class LiftError(TropError):
    """A lift construction could not be completed."""


class PlanInfeasible(LiftError):
    pass


class RetryBudgetExhausted(LiftError):
    pass


class PipelineFailure(LiftError):
    """The rank-3 pipeline exhausted every plan. Never expected on valid input, so treated as a bug."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class InvariantViolation(TropError, AssertionError):
    """A cross-check between independent computations failed. Never expected to fire."""

    def __init__(self, message, matrix=None):
        super().__init__(message)
        self.matrix = matrix


class ChainViolation(InvariantViolation):
    """The rank inequality chain failed for some matrix."""
