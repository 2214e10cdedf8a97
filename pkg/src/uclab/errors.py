"""Exception types shared across the package."""


class UCLabError(Exception):
    """Base class for all package errors."""


class ParseError(UCLabError, ValueError):
    """Malformed family text; carries the 1-based line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class DomainError(UCLabError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ResourceError(UCLabError, RuntimeError):
    """A size guard refused work that would not fit in time or memory."""
