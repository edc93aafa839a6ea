"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: ``ParseError`` -> 2,
``PreconditionError`` (and subclasses) -> 3, ``BudgetExceeded`` -> 4.
"""


class ValtopError(Exception):
    """Base class for every error raised by the library."""


class PreconditionError(ValtopError, ValueError):
    """An operation was called outside its domain."""


class DimensionMismatch(PreconditionError):
    """Exponent vectors or objects of different ambient dimension were mixed."""


class BudgetExceeded(ValtopError):
    """A bounded search or enumeration would exceed its configured size."""


class UnsupportedDimension(BudgetExceeded):
    """The ambient dimension is larger than an exact algorithm supports."""


class ParseError(ValtopError):
    """Malformed problem text.  ``line`` and ``col`` are 1-based."""

    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)
