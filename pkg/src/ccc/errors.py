"""Exception hierarchy shared across the library."""


class CccError(Exception):
    """Base class for every error raised by this library."""


class RingMismatchError(CccError, ValueError):
    """Operands live in different rings or carry incompatible monomial orders."""


class ValidationError(CccError, ValueError):
    """Input violates a documented precondition (homogeneity, prime choice, ...)."""


class ParseError(CccError, ValueError):
    """Rejected polynomial or ideal-file text, with the offending position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = "%s (line %d, column %d)" % (message, line, column)
        super().__init__(message)


class GenericityError(CccError, RuntimeError):
    """Random hypersurface draws kept producing residuals of excess dimension.

    Carries the master seed so the failing run can be reproduced exactly.
    """

    def __init__(self, message, seed=None):
        self.seed = seed
        if seed is not None:
            message = "%s (seed %d)" % (message, seed)
        super().__init__(message)


class InvariantError(CccError, RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
