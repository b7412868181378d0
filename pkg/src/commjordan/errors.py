"""Exception types shared across the package."""


class CommJordanError(Exception):
    """Base class for all errors raised by commjordan."""


class PartitionParseError(CommJordanError, ValueError):
    """Raised when partition text cannot be parsed.

    The offending token is kept on ``token``.
    """

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token


class DomainError(CommJordanError, ValueError):
    """An argument lies outside the domain of the operation."""


class ResourceLimitError(CommJordanError, RuntimeError):
    """A configured size or exploration bound was exceeded."""


class InternalGuardError(CommJordanError, RuntimeError):
    """A runtime postcondition failed; this indicates a bug, not bad input."""
