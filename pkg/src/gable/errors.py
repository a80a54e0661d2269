"""Exception types shared across the library.

Every rejection carries a ``witness`` payload naming the offending object
(a simplex, an orbit, an uncovered point, ...) so that callers and the CLI
can report it without re-deriving it.
"""


class GableError(ValueError):
    """Base class for all library rejections."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(GableError):
    """A value failed its type invariants at construction time."""


class PreconditionError(GableError):
    """An operation was called outside its stated precondition."""


class InternalConsistencyError(GableError):
    """A theorem-backed consistency property failed; indicates a bug."""
