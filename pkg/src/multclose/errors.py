"""Exception hierarchy shared by all multclose modules.

The CLI maps these onto exit codes: InputError -> 1,
ResourceBoundError -> 2, InternalError -> 3.
"""


class MultcloseError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MultcloseError):
    """Malformed or inconsistent input (bad vectors, mixed moduli, ...)."""


class UnsupportedFamilyError(InputError):
    """The module family lacks a hypothesis (upward closed, interval, ...)
    required by the requested construction."""


class ResourceBoundError(MultcloseError):
    """A computation was refused because it exceeds the configured safety
    bounds (ambient dimension, prime size, oracle family size)."""


class InternalError(MultcloseError):
    """An internal invariant failed; indicates a bug, not bad input."""
