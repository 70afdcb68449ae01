"""Exception hierarchy shared by all tokeq modules."""


class TokeqError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgumentError(TokeqError, ValueError):
    """A caller-supplied argument is outside the operation's domain."""


class ValidationError(TokeqError, ValueError):
    """Data violates a structural invariant (duplicate id, rank gap, ...)."""


class ParseError(TokeqError, ValueError):
    """A model or report file could not be parsed."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
            if line is not None:
                prefix += f"{line}:"
            prefix += " "
        super().__init__(prefix + message)


class DecodeError(TokeqError, ValueError):
    """Token ids concatenate to bytes that are not valid UTF-8."""


class CorpusEncodingError(TokeqError, ValueError):
    """A corpus file is not valid UTF-8."""

    def __init__(self, path, byte_offset: int, message: str):
        self.path = path
        self.byte_offset = byte_offset
        super().__init__(f"{path}: invalid UTF-8 at byte offset {byte_offset}: {message}")


class AlignmentError(TokeqError, ValueError):
    """Parallel corpus files disagree on line counts."""


class DegenerateDenominatorError(TokeqError, ArithmeticError):
    """A premium denominator tokenizes to zero tokens."""


class ExcludedLanguageError(TokeqError, LookupError):
    """A consequence table was requested for a language excluded by the UNK filter."""


class CandidatesExhaustedError(TokeqError, RuntimeError):
    """Every monolingual candidate queue is empty; no token can be added."""
