"""Exception types shared across the package."""


class PriorRankError(Exception):
    """Base class for all priorrank errors."""


class ValidationError(PriorRankError, ValueError):
    """Raised when an input object violates its construction invariants."""


class DomainError(PriorRankError, ValueError):
    """Raised when an argument lies outside the mathematical domain of an operation."""


class UndefinedRatioError(PriorRankError, ArithmeticError):
    """Raised when the agreement ratio is undefined (zero or infinite reference divergence)."""
