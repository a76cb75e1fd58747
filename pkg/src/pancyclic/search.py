"""Bounded depth-first search for cycles and paths of an exact length.

A cycle is searched from its least vertex ``s`` among vertices above ``s``
only, with a distance bound back to ``s`` pruning every branch that cannot
close in time. The outcome distinguishes "none" (the search finished) from
"unknown" (the node budget ran out).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import BudgetExceeded, PreconditionError
from .graph import Graph, iter_bits

FOUND = "found"
NONE = "none"
UNKNOWN = "unknown"

DEFAULT_DFS_BUDGET = 2_000_000


@dataclass(frozen=True)
class SearchResult:
    status: str
    vertices: Optional[tuple[int, ...]] = None
    nodes: int = 0

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _Budget(Exception):
    pass


def _two_core(adj: tuple[int, ...], allowed: int) -> int:
    changed = True
    while changed:
        changed = False
        for v in iter_bits(allowed):
            if (adj[v] & allowed).bit_count() < 2:
                allowed &= ~(1 << v)
                changed = True
    return allowed


def find_cycle_of_length(
    g: Graph,
    ell: int,
    budget: int = DEFAULT_DFS_BUDGET,
    allowed: Optional[int] = None,
    through: Optional[int] = None,
) -> SearchResult:
    """Search for a cycle with exactly ``ell`` vertices inside ``allowed``.

    With ``through`` set, only cycles containing that vertex are searched.
    """
    if ell < 3:
        raise PreconditionError("cycle length must be at least 3")
    adj = g.adj
    allowed = g.vertex_mask if allowed is None else allowed & g.vertex_mask
    allowed = _two_core(adj, allowed)
    if allowed.bit_count() < ell:
        return SearchResult(NONE)
    nodes = 0

    def search_from(s: int, pool: int) -> Optional[list[int]]:
        nonlocal nodes
        # within[d] = pool vertices at distance <= d from s
        within = [1 << s]
        frontier = 1 << s
        seen = frontier
        while frontier and len(within) < ell:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & pool & ~seen
            seen |= frontier
            within.append(seen)
        while len(within) < ell + 1:
            within.append(seen)
        path = [s]

        def dfs(v: int, used: int) -> bool:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise _Budget
            depth = len(path)  # vertices so far
            if depth == ell:
                return bool(adj[v] >> s & 1) and path[1] < path[-1]
            # after adding w, ell - depth edges must lead back to s
            cand = adj[v] & pool & ~used & within[ell - depth]
            for w in iter_bits(cand):
                path.append(w)
                if dfs(w, used | (1 << w)):
                    return True
                path.pop()
            return False

        if dfs(s, 1 << s):
            return list(path)
        return None

    try:
        if through is not None:
            if not allowed >> through & 1:
                return SearchResult(NONE)
            found = search_from(through, allowed)
            if found is not None:
                return SearchResult(FOUND, tuple(found), nodes)
            return SearchResult(NONE, None, nodes)
        pool = allowed
        for s in iter_bits(allowed):
            # cycles whose least vertex is s
            pool = _two_core(adj, pool)
            if not pool >> s & 1:
                continue
            if pool.bit_count() < ell:
                break
            found = search_from(s, pool)
            if found is not None:
                return SearchResult(FOUND, tuple(found), nodes)
            pool &= ~(1 << s)
    except _Budget:
        return SearchResult(UNKNOWN, None, nodes)
    return SearchResult(NONE, None, nodes)


def find_path_of_length(
    g: Graph,
    x: int,
    y: int,
    order: int,
    budget: int = DEFAULT_DFS_BUDGET,
    allowed: Optional[int] = None,
) -> SearchResult:
    """An x-y path with exactly ``order`` vertices inside ``allowed``."""
    adj = g.adj
    allowed = g.vertex_mask if allowed is None else allowed
    if not (allowed >> x & 1 and allowed >> y & 1):
        return SearchResult(NONE)
    if x == y:
        return SearchResult(FOUND, (x,)) if order == 1 else SearchResult(NONE)
    # distance-to-y bound
    within = [1 << y]
    frontier = 1 << y
    seen = frontier
    while frontier and len(within) < order:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
        within.append(seen)
    while len(within) < order + 1:
        within.append(seen)
    nodes = 0
    path = [x]

    def dfs(v: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget
        depth = len(path)
        if depth == order:
            return v == y
        if v == y:
            return False
        remaining = order - depth
        cand = adj[v] & allowed & ~used & within[remaining - 1]
        if remaining > 1:
            cand &= ~(1 << y)
        for w in iter_bits(cand):
            path.append(w)
            if dfs(w, used | (1 << w)):
                return True
            path.pop()
        return False

    try:
        ok = dfs(x, 1 << x)
    except _Budget:
        return SearchResult(UNKNOWN, None, nodes)
    if ok:
        return SearchResult(FOUND, tuple(path), nodes)
    return SearchResult(NONE, None, nodes)


def has_path_on(g: Graph, k: int, mask: int, budget: int = DEFAULT_DFS_BUDGET) -> Optional[tuple[int, ...]]:
    """A path on ``k`` vertices inside ``mask`` (any ends), or None."""
    adj = g.adj
    nodes = 0

    def dfs(path: list[int], used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget
        if len(path) == k:
            return True
        for w in iter_bits(adj[path[-1]] & mask & ~used):
            path.append(w)
            if dfs(path, used | (1 << w)):
                return True
            path.pop()
        return False

    for s in iter_bits(mask):
        path = [s]
        try:
            if dfs(path, 1 << s):
                return tuple(path)
        except _Budget:
            raise BudgetExceeded("path search budget exhausted", {"budget": budget}) from None
    return None


def longest_path_between(
    g: Graph, x: int, y: int, allowed: int, budget: int = 200_000
) -> Optional[tuple[int, ...]]:
    """Longest x-y path inside ``allowed`` found within the budget."""
    adj = g.adj
    best: list[Optional[tuple[int, ...]]] = [None]
    nodes = 0
    path = [x]

    def dfs(v: int, used: int) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Budget
        if v == y:
            if best[0] is None or len(path) > len(best[0]):
                best[0] = tuple(path)
            return
        for w in iter_bits(adj[v] & allowed & ~used):
            path.append(w)
            dfs(w, used | (1 << w))
            path.pop()

    if x == y:
        return (x,)
    try:
        dfs(x, 1 << x)
    except _Budget:
        pass
    return best[0]
