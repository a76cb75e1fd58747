"""The invariant triple (alpha, kappa, minimum degree) that drives every lemma."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .connectivity import vertex_connectivity
from .errors import PreconditionError
from .graph import Graph
from .independence import DEFAULT_NODE_BUDGET, independence_number


@dataclass(frozen=True)
class ConditionProfile:
    n: int
    alpha: int
    kappa: int
    min_degree: int

    def __post_init__(self):
        if not (self.kappa <= self.min_degree <= max(self.n - 1, 0)):
            raise PreconditionError(f"inconsistent profile {self}")
        if self.n >= 1 and not 1 <= self.alpha <= self.n:
            raise PreconditionError(f"inconsistent profile {self}")

    @property
    def kappa_exceeds_alpha(self) -> bool:
        return self.kappa > self.alpha

    @property
    def chvatal_erdos(self) -> bool:
        return self.kappa >= self.alpha

    @property
    def mindeg_exceeds_alpha(self) -> bool:
        return self.min_degree > self.alpha

    def to_json(self) -> dict:
        return asdict(self)


def profile(g: Graph, budget: int = DEFAULT_NODE_BUDGET) -> ConditionProfile:
    if g.n < 2:
        raise PreconditionError("profile needs at least 2 vertices")
    return ConditionProfile(
        n=g.n,
        alpha=independence_number(g, budget),
        kappa=vertex_connectivity(g),
        min_degree=g.min_degree(),
    )
