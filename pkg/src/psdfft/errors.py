"""Exception classes shared across the library.

The CLI maps these onto distinct exit codes, so everything user-facing
raises one of the subclasses below rather than a bare ValueError.
"""


class PsdFftError(Exception):
    """Base class for all library errors."""


class SizeError(PsdFftError, ValueError):
    """A dimension is unsupported (empty, too small, or not a power of two)."""


class ParameterError(PsdFftError, ValueError):
    """An argument is outside its allowed range or inconsistent with another."""


class FormatError(PsdFftError, ValueError):
    """A byte stream does not parse.  ``offset`` points at the failure."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class CapacityError(PsdFftError, RuntimeError):
    """A simulated memory region was asked to hold more points than it has."""
