"""Short lengths: ``3 <= ell <= max(n / alpha, delta alpha)``.

Lengths up to 7 come from the neighbourhood case analysis. Otherwise either
the graph is large against ``alpha`` and a cycle-versus-independent-set
search must find the cycle, or the odd-anchor subgraph supplies a dense host
for an even cycle, and an odd length is reached by swapping one host edge
for the rest of its anchor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ..errors import BudgetExceeded, ConstructionStall, InvariantViolation, PreconditionError
from ..finders import find_cycle_or_independent_set, find_even_cycle, find_short_cycle, odd_anchor_subgraph
from ..graph import Graph
from ..paths import OrientedCycle, cycle_violation
from ..profile import ConditionProfile, profile as compute_profile
from .base import RangeResult, with_fallback
from .params import PipelineParams


def lower_window(n: int, alpha: int, ell: int, delta) -> bool:
    return 3 <= ell <= max(Fraction(n, alpha), Fraction(delta) * alpha)


def splice_anchor(g: Graph, c: OrientedCycle, edge: tuple[int, int], anchor: tuple[int, ...]) -> OrientedCycle:
    """Replace the cycle edge ``edge`` by the rest of its anchor cycle.

    ``anchor`` starts with the two ends of ``edge``; the result has
    ``len(anchor) - 2`` more vertices than ``c``.
    """
    a, b = anchor[0], anchor[1]
    if {a, b} != set(edge):
        raise PreconditionError("anchor does not start with the edge")
    rest = list(anchor[2:])  # path b -> rest -> a closes the anchor
    # orient the cycle so it runs a ... b the long way
    if c.succ(b) == a:
        around = c.walk(a, b)
    elif c.succ(a) == b:
        around = c.walk(b, a)[::-1]
    else:
        raise PreconditionError("edge is not on the cycle")
    seq = around + rest
    out = OrientedCycle(tuple(seq))
    if cycle_violation(g, seq) is not None or len(out) != len(c) + len(anchor) - 2:
        raise InvariantViolation("anchor splice broke the cycle", {"cycle": list(c), "anchor": list(anchor)})
    return out


@dataclass(frozen=True)
class AnchorRun:
    cycle: OrientedCycle
    anchor_length: int
    even_length: int
    spliced: bool


def lower_range_odd_anchor(
    g: Graph, ell: int, seed: int, *, alpha: int, params: PipelineParams = PipelineParams()
) -> AnchorRun:
    """Even cycle in the denser half of the anchor subgraph, plus one anchor splice for odd ``ell``."""
    h = odd_anchor_subgraph(g, seed, alpha=alpha, check=False)
    e3, e5 = h.split(3), h.split(5)
    order = [(3, e3), (5, e5)] if len(e3) >= len(e5) else [(5, e5), (3, e3)]
    tried = []
    for i, edges in order:
        if not edges:
            continue
        two_k = ell if ell % 2 == 0 else ell - i + 2
        if two_k < 4:
            tried.append((i, "too short"))
            continue
        host = Graph.from_edges(g.n, edges)
        c = find_even_cycle(host, two_k, budget=params.dfs_budget)
        if c is None:
            tried.append((i, "no even cycle"))
            continue
        if ell % 2 == 0:
            return AnchorRun(c, i, two_k, False)
        verts = c.vertices
        for j in range(len(verts)):
            e = (min(verts[j], verts[j - 1]), max(verts[j], verts[j - 1]))
            if e in h.anchors and len(h.anchors[e]) == i:
                out = splice_anchor(g, c, e, h.anchors[e])
                if len(out) != ell:
                    raise InvariantViolation("spliced cycle has the wrong length", {"got": len(out), "want": ell})
                return AnchorRun(out, i, two_k, True)
        tried.append((i, "no anchored edge on the cycle"))
    raise ConstructionStall("odd-anchor route found nothing", {"tried": tried, "edges": len(h.host_edges)})


def _lower_core(g: Graph, ell: int, params: PipelineParams, prof: ConditionProfile) -> RangeResult:
    n, alpha = g.n, prof.alpha
    if ell <= 7:
        fc = find_short_cycle(g, ell, alpha=alpha, budget=params.dfs_budget, check=False, allow_fallback=False)
        return RangeResult(fc.cycle, "lower:" + fc.route)
    if Fraction(n, alpha) >= params.delta * alpha:
        res = find_cycle_or_independent_set(g, ell, alpha + 1, budget=params.dfs_budget)
        if res.kind == "independent":
            raise InvariantViolation("independent set larger than alpha", {"set": sorted(res.independent)})
        if res.kind == "neither":
            raise ConstructionStall("no cycle of this length below the Ramsey threshold", {"length": ell})
        return RangeResult(res.cycle, "lower:ramsey")
    run = lower_range_odd_anchor(g, ell, params.seed, alpha=alpha, params=params)
    return RangeResult(run.cycle, "lower:odd-anchor")


def lower_range(
    g: Graph,
    ell: int,
    params: PipelineParams = PipelineParams(),
    *,
    profile: Optional[ConditionProfile] = None,
    allow_fallback: bool = True,
) -> RangeResult:
    """Cycle of length exactly ``ell`` through the short-cycle pipeline."""
    if not 3 <= ell <= g.n:
        raise PreconditionError(f"length {ell} outside [3, {g.n}]")
    prof = profile or compute_profile(g)
    if prof.min_degree <= prof.alpha:
        raise PreconditionError(f"minimum degree {prof.min_degree} does not exceed alpha={prof.alpha}")
    return with_fallback(g, ell, params.dfs_budget, lambda: _lower_core(g, ell, params, prof), allow_fallback)
