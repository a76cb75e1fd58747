"""Independent ground truth for cycle existence.

Nothing here touches the bitset search in :mod:`pancyclic.search`: the DFS
works on plain adjacency sets, and the counting oracle uses traces of matrix
powers, so the two can be checked against each other and against the library.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from ..errors import PreconditionError
from ..graph import Graph

FOUND = "found"
NONE = "none"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class OracleAnswer:
    status: str
    cycle: Optional[tuple[int, ...]] = None
    nodes: int = 0

    @property
    def exists(self) -> Optional[bool]:
        return None if self.status == UNKNOWN else self.status == FOUND


def _adjacency(g: Graph) -> list[set[int]]:
    return [set(g.neighbors(v)) for v in range(g.n)]


def _distances(adj: list[set[int]], src: int, allowed: set[int]) -> dict[int, int]:
    dist = {src: 0}
    q = deque([src])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y in allowed and y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist


def brute_find_cycle(g: Graph, ell: int, budget: int = 5_000_000) -> OracleAnswer:
    """Plain DFS for a cycle on exactly ``ell`` vertices.

    The smallest vertex of the cycle is its start, so every search from ``s``
    only visits vertices above ``s``.  Branches die when the remaining length
    cannot reach back to ``s`` or a vertex has too few usable neighbours.
    """
    if not 3 <= ell <= g.n:
        raise PreconditionError(f"length {ell} outside 3..{g.n}")
    adj = _adjacency(g)
    nodes = 0
    for s in range(g.n):
        allowed = {v for v in range(s, g.n) if len(adj[v]) >= 2}
        if s not in allowed or len(allowed) < ell:
            continue
        dist = _distances(adj, s, allowed)
        if len(dist) < ell:
            continue
        path = [s]
        on = {s}

        def dfs(x: int) -> Optional[bool]:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                return None
            if len(path) == ell:
                return s in adj[x]
            left = ell - len(path)
            for y in sorted(adj[x]):
                if y in on or y not in dist or dist[y] > left:
                    continue
                # the second vertex is below the last one, which fixes the direction
                if len(path) == ell - 1 and len(path) > 1 and y < path[1]:
                    continue
                path.append(y)
                on.add(y)
                r = dfs(y)
                if r is None or r:
                    return r
                path.pop()
                on.discard(y)
            return False

        r = dfs(s)
        if r is None:
            return OracleAnswer(UNKNOWN, nodes=nodes)
        if r:
            return OracleAnswer(FOUND, tuple(path), nodes)
    return OracleAnswer(NONE, nodes=nodes)


def is_pancyclic_brute(g: Graph, budget: int = 5_000_000) -> dict[int, OracleAnswer]:
    """Oracle answer for every length 3..n."""
    return {ell: brute_find_cycle(g, ell, budget) for ell in range(3, g.n + 1)}


def oracle_cycle_lengths(g: Graph, budget: int = 5_000_000) -> set[int]:
    return {ell for ell, a in is_pancyclic_brute(g, budget).items() if a.status == FOUND}


def is_cycle(g: Graph, seq) -> bool:
    """Literal check that ``seq`` is a cycle of ``g``."""
    seq = list(seq)
    if len(seq) < 3 or len(set(seq)) != len(seq):
        return False
    if any(not 0 <= v < g.n for v in seq):
        return False
    adj = _adjacency(g)
    return all(seq[i - 1] in adj[seq[i]] for i in range(len(seq)))


def count_cycles(adjacency: np.ndarray, ell: int) -> np.ndarray:
    """Number of ``ell``-cycles of each graph in a stack of adjacency matrices.

    Closed walks of length ``ell`` that visit all vertices of an ``ell``-set
    are exactly its Hamilton cycles, ``2 ell`` walks per cycle.  Inclusion and
    exclusion over subsets ``T`` turns that into a sum of traces:
    ``sum_T (-1)^(ell-|T|) C(n-|T|, ell-|T|) tr(A_T^ell) / (2 ell)``.
    """
    a = np.asarray(adjacency, dtype=np.int64)
    if a.ndim == 2:
        a = a[None]
    n = a.shape[-1]
    total = np.zeros(a.shape[0], dtype=np.int64)
    if ell > n:
        return total
    for t in range(1, ell + 1):
        coef = (-1) ** (ell - t) * comb(n - t, ell - t)
        for sub in combinations(range(n), t):
            idx = np.array(sub)
            m = a[:, idx][:, :, idx]
            p = np.linalg.matrix_power(m, ell) if t > 1 else m * 0
            total += coef * np.trace(p, axis1=1, axis2=2)
    if np.any(total % (2 * ell)):
        raise ArithmeticError("trace sum is not a multiple of 2*ell")
    return total // (2 * ell)


def adjacency_stack(graphs) -> np.ndarray:
    graphs = list(graphs)
    n = max((g.n for g in graphs), default=0)
    out = np.zeros((len(graphs), n, n), dtype=np.int64)
    for k, g in enumerate(graphs):
        if g.n != n:
            raise PreconditionError("all graphs in a stack need the same order")
        for u, v in g.edges():
            out[k, u, v] = out[k, v, u] = 1
    return out
