"""Typed errors shared across the toolkit.

Every solver and construction fails loudly through one of these instead of
degrading to an approximate answer.
"""


class InvalidInputError(ValueError):
    """A precondition on user-supplied data was violated."""


class CapacityError(RuntimeError):
    """An exact search was asked to exceed its configured instance size."""


class SearchFailureError(RuntimeError):
    """A randomized search exhausted its trial budget.

    Carries the best value seen so the caller can report progress.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class ConsistencyError(RuntimeError):
    """Two independent internal computations disagreed; never swallowed."""
