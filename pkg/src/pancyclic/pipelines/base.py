"""Result type and the bounded DFS fallback shared by the range drivers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import BudgetExceeded, ConstructionStall, InvariantViolation
from ..graph import Graph
from ..paths import OrientedCycle, cycle_violation
from ..search import FOUND, NONE, find_cycle_of_length

FALLBACK_DFS = "fallback:dfs"


@dataclass(frozen=True)
class RangeResult:
    """A cycle plus the route that produced it; ``stall`` holds the reason a fallback was needed."""

    cycle: OrientedCycle
    route: str
    stall: Optional[str] = None
    steps: tuple[str, ...] = field(default=())

    @property
    def fallback(self) -> bool:
        return self.route.startswith("fallback")


def checked(g: Graph, c: OrientedCycle, ell: int, where: str) -> OrientedCycle:
    bad = cycle_violation(g, c.vertices)
    if bad is not None or len(c) != ell:
        raise InvariantViolation(
            f"{where} returned a bad cycle", {"cycle": list(c), "target": ell, "problem": str(bad)}
        )
    return c


def dfs_cycle(g: Graph, ell: int, budget: int) -> OrientedCycle:
    res = find_cycle_of_length(g, ell, budget)
    if res.status == FOUND:
        return OrientedCycle(tuple(res.vertices))
    if res.status == NONE:
        raise ConstructionStall(f"graph has no cycle of length {ell}", {"length": ell, "exhaustive": True})
    raise BudgetExceeded(f"cycle search for length {ell} ran out of budget", {"length": ell, "budget": budget})


def with_fallback(g: Graph, ell: int, budget: int, attempt, allow_fallback: bool = True) -> RangeResult:
    """Run ``attempt()``; on a stall fall back to the bounded DFS and tag the result."""
    from ..errors import PancyclicError, HypothesisViolation

    try:
        res = attempt()
        checked(g, res.cycle, ell, res.route)
        return res
    except InvariantViolation:
        raise
    except HypothesisViolation:
        raise
    except PancyclicError as exc:
        if not allow_fallback:
            raise
        c = dfs_cycle(g, ell, budget)
        return RangeResult(checked(g, c, ell, FALLBACK_DFS), FALLBACK_DFS, f"{type(exc).__name__}: {exc}")
