"""Exact independence number by branch and bound.

This is a maximum clique search on the complement with greedy colouring as
the upper bound (the usual MCQ scheme), run directly on bitsets. A node
budget keeps runaway searches from hanging: crossing it raises
:class:`BudgetExceeded` instead of returning an approximation.
"""

from __future__ import annotations

from typing import Optional

from .errors import BudgetExceeded
from .graph import Graph, VertexSet, as_mask, iter_bits, mask_to_set

DEFAULT_NODE_BUDGET = 10**8


def independence_number(g: Graph, budget: int = DEFAULT_NODE_BUDGET) -> int:
    return max_independent_mask(g, g.vertex_mask, budget).bit_count()


def max_independent_set_in(
    g: Graph, s: Optional[VertexSet] = None, budget: int = DEFAULT_NODE_BUDGET
) -> frozenset[int]:
    """A maximum independent set of ``g[s]`` (``s`` defaults to all vertices)."""
    mask = g.vertex_mask if s is None else as_mask(g, s)
    return mask_to_set(max_independent_mask(g, mask, budget))


def _greedy(adj: tuple[int, ...], cand: int) -> int:
    chosen = 0
    while cand:
        # take the vertex with fewest neighbours left, ties to the lowest label
        best_v, best_d = -1, None
        for v in iter_bits(cand):
            d = (adj[v] & cand).bit_count()
            if best_d is None or d < best_d:
                best_v, best_d = v, d
                if d == 0:
                    break
        chosen |= 1 << best_v
        cand &= ~adj[best_v] & ~(1 << best_v)
    return chosen


def max_independent_mask(g: Graph, mask: int, budget: int = DEFAULT_NODE_BUDGET) -> int:
    """Mask of a maximum independent set inside ``mask``."""
    adj = g.adj
    if mask == 0:
        return 0
    # complement adjacency restricted to mask: independent sets are its cliques
    cn = {v: mask & ~adj[v] & ~(1 << v) for v in iter_bits(mask)}

    best = _greedy(adj, mask)
    best_size = best.bit_count()
    nodes = 0

    def colour_sort(p: int) -> tuple[list[int], list[int]]:
        order: list[int] = []
        bounds: list[int] = []
        colour = 0
        uncoloured = p
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~cn[v]
                q ^= low
                uncoloured ^= low
                order.append(v)
                bounds.append(colour)
        return order, bounds

    def expand(r: int, size: int, p: int) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExceeded(
                f"independence search exceeded {budget} nodes",
                {"budget": budget, "best_so_far": best_size},
            )
        order, bounds = colour_sort(p)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best_size:
                return
            v = order[idx]
            vb = 1 << v
            newp = p & cn[v]
            if newp:
                expand(r | vb, size + 1, newp)
            elif size + 1 > best_size:
                best_size = size + 1
                best = r | vb
            p &= ~vb

    expand(0, 0, mask)
    return best
