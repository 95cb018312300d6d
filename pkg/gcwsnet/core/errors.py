"""
GCWSNet error hierarchy.

Every failure raised on purpose by the toolkit derives from ``GcwsNetError`` and
also from the closest builtin, so callers can catch either.
"""

from typing import Optional


class GcwsNetError(Exception):
    """Base class for all toolkit errors."""


class EmptyVectorError(GcwsNetError, ValueError):
    """A vector with no nonzero entry was given where one is required."""

    def __init__(self, message: str = "vector has no nonzero entry", row: Optional[int] = None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class InvalidParameterError(GcwsNetError, ValueError):
    """A scalar parameter is outside its domain (p = 0, gamma <= 0, ...)."""


class InvalidConfigError(GcwsNetError, ValueError):
    """A configuration object is inconsistent with the requested operation."""


class ConfigMismatchError(GcwsNetError, ValueError):
    """Two artifacts produced under different configurations were combined."""


class PowerOverflowError(GcwsNetError, OverflowError):
    """The power transform left the range of 64-bit floats."""

    def __init__(self, message: str, row: Optional[int] = None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class CorruptInputError(GcwsNetError, ValueError):
    """Input data does not follow the expected format or value range."""

    def __init__(self, message: str, path: Optional[str] = None, row: Optional[int] = None):
        where = ""
        if path is not None:
            where = f"{path}"
            if row is not None:
                where += f":{row}"
            where += ": "
        elif row is not None:
            where = f"row {row}: "
        super().__init__(f"{where}{message}")
        self.path = path
        self.row = row


class DivergenceError(GcwsNetError, ArithmeticError):
    """Training produced a non-finite loss."""

    def __init__(self, iteration: int, loss: float):
        super().__init__(f"non-finite training loss {loss!r} at iteration {iteration}")
        self.iteration = iteration
        self.loss = loss


__all__ = [
    "GcwsNetError",
    "EmptyVectorError",
    "InvalidParameterError",
    "InvalidConfigError",
    "ConfigMismatchError",
    "PowerOverflowError",
    "CorruptInputError",
    "DivergenceError",
]
