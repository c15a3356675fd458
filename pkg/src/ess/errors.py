"""Exception hierarchy shared by every module."""


class ESSError(Exception):
    """Base class for all errors raised by the package."""


class DomainError(ESSError, ValueError):
    """An argument is outside the operation's domain."""


class CapacityError(DomainError):
    """A graph would exceed the 64-vertex cap."""


class ParseError(ESSError, ValueError):
    """Malformed textual input (graph6, spec strings, pattern files)."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class SizeError(ESSError):
    """The instance is too large for the exact algorithm or its search budget."""


class InvariantError(ESSError, AssertionError):
    """An internal consistency check failed."""
