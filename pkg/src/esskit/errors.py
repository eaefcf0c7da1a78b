"""Exception hierarchy shared across the package.

ValidationError covers malformed data (bad files, inconsistent instances);
UsageError covers structurally valid data passed to an operation whose
preconditions it violates.  The CLI maps both to exit code 2.
"""


class EsskitError(Exception):
    """Base class for all package errors."""


class ValidationError(EsskitError):
    """Input data violates a structural invariant."""


class UsageError(EsskitError):
    """An operation was called outside its contract."""
