"""Exception types shared across the package."""


class SqRamseyError(Exception):
    """Base class for all package-specific errors."""


class InvalidParam(SqRamseyError, ValueError):
    """A parameter is outside its physical or numerical domain."""


class CutoffTooSmall(SqRamseyError, ValueError):
    """The requested Fock cutoff cannot represent the state to tolerance."""


class BudgetExceeded(SqRamseyError, MemoryError):
    """A dense-oracle workspace would exceed the configured memory budget."""


class AccuracyError(SqRamseyError, ArithmeticError):
    """A computed quantity violates a physical bound beyond float noise."""
