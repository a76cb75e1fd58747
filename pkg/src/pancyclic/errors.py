"""Exception types shared across the package.

Failures that callers are expected to handle (a rotation that does not apply,
a construction that stalls at small sizes) carry a ``report`` dict so they can
be logged or serialized without string parsing.
"""

from __future__ import annotations

from typing import Any, Optional


class PancyclicError(Exception):
    """Base class for every error raised by this package."""

    def __init__(self, message: str, report: Optional[dict[str, Any]] = None):
        super().__init__(message)
        self.report: dict[str, Any] = dict(report or {})


class PreconditionError(PancyclicError, ValueError):
    """An operation was called on inputs outside its contract."""


class RotationError(PreconditionError):
    """A cycle rewiring could not be applied to the given configuration."""


class BudgetExceeded(PancyclicError):
    """A search ran past its node or step budget."""


class ConstructionStall(PancyclicError):
    """A constructive procedure found no admissible next move.

    At small sizes the counting arguments behind a construction may not bind,
    so this is an expected outcome that triggers a search fallback.
    """


class HypothesisViolation(PancyclicError):
    """The search found a witness that kappa > alpha (or similar) fails.

    ``witness`` is the object found, usually an independent set that is
    larger than the connectivity allows.
    """

    def __init__(self, message: str, witness: Any = None, report: Optional[dict[str, Any]] = None):
        super().__init__(message, report)
        self.witness = witness


class InvariantViolation(PancyclicError, AssertionError):
    """Internal consistency failure. The report holds a full state dump."""
