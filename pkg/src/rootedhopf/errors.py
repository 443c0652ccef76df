"""Exception types shared across the package."""


class RootedHopfError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(RootedHopfError, ValueError):
    """Malformed tree, forest or expression text.

    ``offset`` is the byte offset of the first offending character.
    """

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class DomainError(RootedHopfError, ValueError):
    """An argument lies outside the domain of an operation."""


class DimensionMismatch(RootedHopfError, ValueError):
    pass


class SingularBasisError(RootedHopfError, ValueError):
    """A purported basis is linearly dependent."""

    def __init__(self, message, column):
        super().__init__(message)
        self.column = column


class NotCommutingError(RootedHopfError, ValueError):
    pass


class ResourceBoundError(RootedHopfError, RuntimeError):
    """A requested size exceeds a configured computation bound."""
