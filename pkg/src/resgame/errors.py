"""Exception types raised across the package."""


class ResourceGameError(Exception):
    """Base class for every error raised by resgame."""


class InvalidParameter(ResourceGameError, ValueError):
    pass


class MissingCoalition(ResourceGameError, ValueError):
    pass


class DuplicateCoalition(ResourceGameError, ValueError):
    pass


class TooManyServices(ResourceGameError, ValueError):
    pass


class InvalidOffer(ResourceGameError, ValueError):
    pass


class DimensionMismatch(ResourceGameError, ValueError):
    pass


class NoConvergence(ResourceGameError, RuntimeError):
    """Best-response iteration ran out of iterations.

    The last iterate and its max-norm residual are kept on the exception so
    callers can inspect how far off the run was.
    """

    def __init__(self, message, last_iterate=None, residual=float("nan")):
        super().__init__(message)
        self.last_iterate = last_iterate
        self.residual = residual


class ParseError(ResourceGameError, ValueError):
    """Malformed scenario text. ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line=0, column=0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ValidationError(ResourceGameError, ValueError):
    pass
