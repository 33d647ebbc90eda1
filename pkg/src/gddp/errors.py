"""Exception hierarchy shared by all gddp modules."""


class GddpError(Exception):
    """Base class for every error raised by this package."""


class MalformedFactError(GddpError):
    """A fact's argument list does not match its predicate's arity."""


class NonCanonicalFactError(GddpError):
    """An operation that requires canonical facts received a non-canonical one."""


class ParseError(GddpError):
    """Syntax or validation error in a problem or rule file.

    Carries the 1-based line and column of the offending token so editors
    and the CLI can point at it.
    """

    def __init__(self, message, line=None, column=None, token=None):
        self.line = line
        self.column = column
        self.token = token
        loc = f" at line {line}, column {column}" if line is not None else ""
        tok = f" (near {token!r})" if token else ""
        super().__init__(f"{message}{loc}{tok}")


class RealizationError(GddpError):
    """A constructor could not be realized with exact coordinates."""


class UnsupportedFormatError(GddpError):
    """The requested operation needs a constructive problem."""


class NoProofError(GddpError):
    """Proof extraction was asked for a goal that is not in the fact base."""
