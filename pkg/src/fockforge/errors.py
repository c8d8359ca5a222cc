"""Exception types shared by every fockforge module."""


class FockForgeError(Exception):
    """Base class for all library errors."""


class UsageError(FockForgeError, ValueError):
    """Bad arguments: mismatched variables, negative orders, unknown colors."""


class UnsupportedInputError(FockForgeError):
    """Input is well formed but outside what an operation supports."""


class TruncationError(FockForgeError):
    """A computation needs more truncation headroom than it was given."""
