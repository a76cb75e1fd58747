"""Vertex-disjoint paths and vertex connectivity via vertex-split flows.

Every vertex ``v`` is split into an in-node and an out-node joined by a unit
arc; each graph edge becomes two unit arcs ``u_out -> w_in`` and
``w_out -> u_in``. Augmenting paths are found by BFS over this split network,
with neighbour sets taken from the bitset rows so a whole adjacency row is
scanned per vertex rather than per edge.

A singleton end set is a shared terminal: any number of paths may start (or
end) there. Vertices of a larger end set carry at most one path each.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .errors import InvariantViolation, PreconditionError
from .graph import Graph, VertexSet, as_mask, iter_bits, lowest


@dataclass(frozen=True)
class Fan:
    """Result of :func:`disjoint_paths`.

    ``paths`` are vertex tuples from an a-vertex to a b-vertex. When fewer
    than the requested number were found, ``cut_vertices`` plus
    ``cut_edges`` separate ``a`` from ``b`` and have exactly ``len(paths)``
    members in total (Menger).
    """

    paths: tuple[tuple[int, ...], ...]
    requested: int
    cut_vertices: frozenset[int] = field(default_factory=frozenset)
    cut_edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    @property
    def complete(self) -> bool:
        return len(self.paths) >= self.requested

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


class _Flow:
    """Unit-capacity vertex-split flow between two vertex sets."""

    def __init__(self, adj: tuple[int, ...], n: int, a: int, b: int, allowed: int):
        self.adj = adj
        self.n = n
        self.a = a
        self.b = b
        self.allowed = allowed
        self.shared_src = a.bit_count() == 1
        self.shared_snk = b.bit_count() == 1
        self.x = lowest(a) if self.shared_src else -1
        self.y = lowest(b) if self.shared_snk else -1
        # arcs may enter any allowed vertex except source-side ones
        self.targets = allowed & ~a
        self.used = 0
        self.outflow = [0] * n
        self.inflow = [0] * n
        self.value = 0
        self.reached_in = 0
        self.reached_out = 0

    def _search(self) -> Optional[list[int]]:
        n = self.n
        adj, targets, used = self.adj, self.targets, self.used
        b, outflow, inflow = self.b, self.outflow, self.inflow
        shared_snk, y = self.shared_snk, self.y
        src_node = 2 * n
        parent: dict[int, int] = {}
        seen_in = 0
        seen_out = 0
        queue: deque[int] = deque()
        if self.shared_src:
            start = n + self.x
            seen_out = 1 << self.x
        else:
            start = src_node
        parent[start] = -1
        queue.append(start)
        end = -1
        while queue and end < 0:
            node = queue.popleft()
            if node == src_node:
                # source arcs are uncapacitated, so every a_in is reachable;
                # saturated ones are dead ends but still count for the cut
                seen_in |= self.a
                for v in iter_bits(self.a & ~used):
                    parent[v] = node
                    queue.append(v)
            elif node < n:
                v = node
                if shared_snk and v == y:
                    end = node
                    break
                if not used >> v & 1:
                    if not seen_out >> v & 1:
                        seen_out |= 1 << v
                        parent[n + v] = node
                        queue.append(n + v)
                else:
                    for p in iter_bits(inflow[v] & ~seen_out):
                        seen_out |= 1 << p
                        parent[n + p] = node
                        queue.append(n + p)
            else:
                v = node - n
                if not shared_snk and b >> v & 1:
                    end = node
                    break
                if used >> v & 1 and not seen_in >> v & 1:
                    seen_in |= 1 << v
                    parent[v] = node
                    queue.append(v)
                cand = adj[v] & targets & ~seen_in & ~outflow[v]
                for w in iter_bits(cand):
                    seen_in |= 1 << w
                    parent[w] = node
                    if shared_snk and w == y:
                        end = w
                        break
                    queue.append(w)
        self.reached_in = seen_in
        self.reached_out = seen_out
        if end < 0:
            return None
        route = [end]
        while parent[route[-1]] != -1:
            route.append(parent[route[-1]])
        route.reverse()
        return route

    def _apply(self, route: list[int]) -> None:
        n = self.n
        for p, q in zip(route, route[1:]):
            if p == 2 * n:
                continue
            if p < n and q == p + n:
                self.used |= 1 << p
            elif p >= n and q == p - n:
                self.used &= ~(1 << q)
            elif p >= n and q < n:
                a, b = p - n, q
                self.outflow[a] |= 1 << b
                self.inflow[b] |= 1 << a
            elif p < n and q >= n:
                a, b = q - n, p
                self.outflow[a] &= ~(1 << b)
                self.inflow[b] &= ~(1 << a)
            else:  # pragma: no cover - route shape is fixed by _search
                raise InvariantViolation("malformed augmenting route", {"route": route})

    def run(self, limit: int) -> None:
        while self.value < limit:
            route = self._search()
            if route is None:
                return
            self._apply(route)
            self.value += 1

    def paths(self) -> list[tuple[int, ...]]:
        n = self.n
        succ = [0] * n
        for u in range(n):
            out = self.outflow[u]
            for w in iter_bits(out):
                if not self.outflow[w] >> u & 1:
                    succ[u] |= 1 << w
        starts = []
        if self.shared_src:
            starts = [(self.x, w) for w in iter_bits(succ[self.x])]
        else:
            starts = [(a, None) for a in iter_bits(self.a & self.used)]
        out = []
        for s, first in starts:
            seq = [s]
            cur = s if first is None else first
            if first is not None:
                seq.append(first)
            guard = 0
            while not self._is_end(cur):
                nxt = succ[cur]
                if nxt.bit_count() != 1:
                    raise InvariantViolation(
                        "flow decomposition is not a set of paths",
                        {"vertex": cur, "succ": list(iter_bits(nxt)), "partial": seq},
                    )
                cur = lowest(nxt)
                seq.append(cur)
                guard += 1
                if guard > n:
                    raise InvariantViolation("flow decomposition loops", {"partial": seq})
            out.append(tuple(seq))
        out.sort()
        return out

    def _is_end(self, v: int) -> bool:
        if self.shared_snk:
            return v == self.y
        return bool(self.b >> v & 1)

    def cut(self) -> tuple[frozenset[int], frozenset[tuple[int, int]]]:
        """Saturated arcs leaving the residual-reachable side after a failed search."""
        n = self.n
        r_in, r_out = self.reached_in, self.reached_out
        if self.shared_src:
            r_out |= 1 << self.x
        verts = set(iter_bits(r_in & ~r_out & self.used))
        edges = set()
        for u in iter_bits(r_out):
            for w in iter_bits(self.outflow[u] & ~r_in):
                # deleting an endpoint kills the edge too; only a direct
                # edge between two shared terminals has to stay an edge
                if w != self.y:
                    verts.add(w)
                elif u != self.x:
                    verts.add(u)
                else:
                    edges.add((min(u, w), max(u, w)))
        return frozenset(verts), frozenset(edges)


def disjoint_paths(
    g: Graph,
    a: VertexSet,
    b: VertexSet,
    k: int,
    forbidden: Optional[VertexSet] = None,
) -> Fan:
    """Up to ``k`` internally disjoint a-b paths avoiding ``forbidden``.

    Interiors avoid ``a`` and ``b``. If fewer than ``k`` paths exist the
    returned :class:`Fan` carries a separating cut of the same size.
    """
    am, bm, fm = as_mask(g, a), as_mask(g, b), as_mask(g, forbidden)
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if not am or not bm:
        raise PreconditionError("end sets must be nonempty")
    if am & bm:
        raise PreconditionError("end sets must be disjoint")
    if (am | bm) & fm:
        raise PreconditionError("end sets must avoid the forbidden set")
    return disjoint_paths_mask(g, am, bm, k, g.vertex_mask & ~fm)


def disjoint_paths_mask(g: Graph, am: int, bm: int, k: int, allowed: int) -> Fan:
    flow = _Flow(g.adj, g.n, am, bm, allowed)
    flow.run(k)
    paths = flow.paths()
    if len(paths) != flow.value:
        raise InvariantViolation("path count differs from flow value", {"value": flow.value, "paths": paths})
    if flow.value >= k:
        return Fan(tuple(paths), k)
    verts, edges = flow.cut()
    if len(verts) + len(edges) != flow.value:
        raise InvariantViolation(
            "cut size differs from flow value",
            {"value": flow.value, "cut_vertices": sorted(verts), "cut_edges": sorted(edges)},
        )
    return Fan(tuple(paths), k, verts, edges)


def local_connectivity(g: Graph, s: int, t: int, limit: Optional[int] = None, allowed: Optional[int] = None) -> int:
    """Maximum number of internally disjoint s-t paths, capped at ``limit``."""
    if s == t:
        raise PreconditionError("endpoints must differ")
    allowed = g.vertex_mask if allowed is None else allowed
    flow = _Flow(g.adj, g.n, 1 << s, 1 << t, allowed)
    flow.run(g.n if limit is None else limit)
    return flow.value


def vertex_connectivity(g: Graph) -> int:
    """Exact vertex connectivity; ``n - 1`` for complete graphs."""
    n = g.n
    if n < 2:
        raise PreconditionError("vertex connectivity needs at least 2 vertices")
    if g.is_complete():
        return n - 1
    degrees = [row.bit_count() for row in g.adj]
    best = min(degrees)
    v = degrees.index(best)
    # sinks: every non-neighbour of a minimum-degree vertex, then every
    # non-adjacent pair of its neighbours
    for w in iter_bits(g.vertex_mask & ~g.adj[v] & ~(1 << v)):
        if best == 0:
            return 0
        best = min(best, local_connectivity(g, v, w, limit=best))
    nbrs = list(iter_bits(g.adj[v]))
    for x, y in combinations(nbrs, 2):
        if best == 0:
            break
        if not g.adj[x] >> y & 1:
            best = min(best, local_connectivity(g, x, y, limit=best))
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    if g.n <= k:
        return False
    return vertex_connectivity(g) >= k
