"""
crossfam.errors - Exception Hierarchy
=====================================

Every failure the library signals on purpose derives from ``CrossfamError``.
The concrete classes also subclass the matching builtin, so callers that
only know ``ValueError`` or ``LookupError`` keep working.

    CrossfamError
    ├── InvalidInputError (ValueError)   bad sizes, ranges, regimes
    ├── NotFoundError (LookupError)      a requested set does not exist
    └── SizeGuardError (RuntimeError)    a cap or search budget would be exceeded
"""

from __future__ import annotations


class CrossfamError(Exception):
    """Base class for all crossfam errors."""


class InvalidInputError(CrossfamError, ValueError):
    """An argument violates an operation's precondition."""


class NotFoundError(CrossfamError, LookupError):
    """A k-partner, corresponding set or feasible completion does not exist."""


class SizeGuardError(CrossfamError, RuntimeError):
    """
    Refusal to materialize or search beyond a configured limit.

    Attributes
    ----------
    requested : int
        The size or evaluation count that was asked for.
    limit : int
        The configured cap or budget.
    """

    def __init__(self, what: str, requested: int, limit: int) -> None:
        self.requested = requested
        self.limit = limit
        super().__init__(f"{what}: {requested:,} exceeds the limit of {limit:,}")
