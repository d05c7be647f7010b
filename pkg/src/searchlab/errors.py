"""Exception hierarchy shared across the package."""


class SearchLabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SearchLabError, ValueError):
    """A query point lies outside the search domain."""


class ConfigurationError(SearchLabError, ValueError):
    """A spec/params object violates its invariants."""


class NumericalError(SearchLabError):
    """A numerical routine failed beyond recovery (e.g. Cholesky breakdown)."""


class UsageError(SearchLabError, ValueError):
    """An operation was called with arguments that make no sense."""


class ValidationError(SearchLabError, ValueError):
    """A record or request carries out-of-range or malformed fields."""


class ConflictError(SearchLabError):
    """An append would violate a uniqueness constraint."""


class NotFoundError(SearchLabError, KeyError):
    """A referenced game, trace, or session does not exist."""


class StateError(SearchLabError):
    """An operation is not allowed in the current session state."""


class ParseError(SearchLabError, ValueError):
    """A serialized record or config line could not be parsed."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
