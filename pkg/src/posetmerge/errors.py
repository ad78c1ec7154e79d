"""Exception types shared by every module."""


class PosetMergeError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PosetMergeError, ValueError):
    """An input violates a mathematical precondition."""


class DimensionError(DomainError):
    """Matrix or relation shapes do not agree."""


class LabelError(PosetMergeError, KeyError):
    """A label is not part of the ground set it was looked up in."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown label"


class CapacityError(PosetMergeError):
    """An instance exceeds a configured size cap."""
