"""
Custom exceptions for cliquesparse.

Every error raised on purpose by the library derives from CliqueSparseError so
that the command-line application can map it to an exit code.
"""

from typing import Optional


class CliqueSparseError(Exception):
    """Base class for all library errors."""
    pass


class ConfigurationError(CliqueSparseError):
    """Raised when configuration is invalid or missing."""
    pass


class DomainError(CliqueSparseError):
    """Raised when an input violates an operation's precondition."""
    pass


class GraphParseError(DomainError):
    """Raised when graph text cannot be parsed."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidDecompositionError(DomainError):
    """Raised when a tree- or rank-decomposition is not valid for its graph."""
    pass


class CapacityError(CliqueSparseError):
    """Raised when an exhaustive computation would exceed a configured cap."""

    def __init__(
        self,
        cap_name: str,
        limit: int,
        actual: Optional[int] = None,
        entry: Optional[str] = None,
    ):
        self.cap_name = cap_name
        self.limit = limit
        self.actual = actual
        self.entry = entry
        detail = f" (got {actual})" if actual is not None else ""
        where = f" while computing {entry}" if entry else ""
        super().__init__(f"capacity '{cap_name}' exceeded{where}: limit {limit}{detail}")


class VerificationError(CliqueSparseError):
    """Raised when a constructed object fails its own certificate check."""
    pass


class UsageError(CliqueSparseError):
    """Raised for unknown commands, unknown flags or malformed flag values."""
    pass
