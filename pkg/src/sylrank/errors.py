"""Exception types shared across the library."""


class SylrankError(Exception):
    """Base class for all library errors."""


class ParseError(SylrankError):
    """Malformed ring/matrix/module/rank-function text."""

    def __init__(self, message, line=None, col=None):
        loc = ""
        if line is not None:
            loc += f" (line {line}"
            loc += f", col {col})" if col is not None else ")"
        elif col is not None:
            loc += f" (col {col})"
        super().__init__(message + loc)
        self.line = line
        self.col = col


class RingMismatch(SylrankError):
    """An operation received operands over different rings."""


class UnsupportedRing(SylrankError):
    """The ring is outside the domain of the requested kernel."""


class PreconditionError(SylrankError):
    """An operation's stated precondition does not hold for the inputs."""
