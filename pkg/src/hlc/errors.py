"""Shared exception types."""


class HlcError(Exception):
    """Base class for all package errors."""


class InvalidInputError(HlcError):
    """Malformed instance data: bad JSON shape, out-of-range vertex, etc."""


class CapExceededError(HlcError):
    """An enumeration or generation guard refused to run at this size."""


class InfeasibleListError(HlcError):
    """A vertex that must be randomly colored has an empty list."""

    def __init__(self, vertex):
        super().__init__(f"empty list at vertex {vertex}")
        self.vertex = vertex
