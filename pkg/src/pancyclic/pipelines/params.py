"""Tuning knobs shared by the range pipelines."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from ..errors import PreconditionError


@dataclass(frozen=True)
class PipelineParams:
    """``delta`` and ``eta`` are the small constants of the constructions.

    The budgets cap every search so a desk-scale run always terminates;
    ``remainder_chords`` is the chord count the remainder ladder asks of its
    starting cycle.
    """

    delta: Fraction = Fraction(1, 100)
    eta: Fraction = Fraction(1, 10)
    dfs_budget: int = 2_000_000
    move_budget: int = 4_000
    step_budget: int = 10_000
    remainder_chords: int = 18
    seed: int = 0

    def __post_init__(self):
        d, e = Fraction(self.delta), Fraction(self.eta)
        object.__setattr__(self, "delta", d)
        object.__setattr__(self, "eta", e)
        if not 0 < d < e < 1:
            raise PreconditionError(f"need 0 < delta < eta < 1, got delta={d}, eta={e}")
        if min(self.dfs_budget, self.move_budget, self.step_budget) < 1:
            raise PreconditionError("budgets must be positive")
        if self.remainder_chords < 0:
            raise PreconditionError("remainder_chords must be non-negative")

    def with_(self, **changes) -> "PipelineParams":
        return replace(self, **changes)
