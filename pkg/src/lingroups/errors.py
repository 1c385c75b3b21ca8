"""Typed failure modes shared across the package.

Callers distinguish three kinds of failure: the input is outside the
supported theory (UnsupportedInput), a configured resource cap was hit
(CapExceeded), or the input text could not be parsed (GroupFileError).
The CLI maps these to exit codes 2, 3 and 4 respectively.
"""


class LingroupsError(Exception):
    """Base class for package errors."""


class UnsupportedInput(LingroupsError):
    """The request is well formed but outside the supported theory."""


class NoAdmissibleMap(UnsupportedInput):
    """No congruence map with the required kernel property exists."""


class ReductionError(UnsupportedInput):
    """A matrix entry cannot be reduced under the chosen congruence map."""


class CapExceeded(LingroupsError):
    """A configured size cap was exceeded; re-select parameters or raise caps."""

    def __init__(self, what, limit):
        super().__init__(f"{what} exceeds cap {limit}")
        self.what = what
        self.limit = limit


class GroupFileError(LingroupsError):
    """A group file or scalar literal could not be parsed."""
