"""Immutable simple graphs with bitset adjacency rows.

Vertices are ``0..n-1``. Row ``adj[v]`` is a Python int whose bit ``u`` is set
exactly when ``uv`` is an edge. Vertex sets are passed around internally as
int masks; public functions accept any iterable of vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Optional, Union

from .errors import PreconditionError

MAX_VERTICES = 4096

VertexSet = Union[int, Iterable[int]]


def bit(v: int) -> int:
    return 1 << v


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest(mask: int) -> int:
    """Index of the lowest set bit, or -1 for an empty mask."""
    return (mask & -mask).bit_length() - 1


def popcount(mask: int) -> int:
    return mask.bit_count()


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_to_set(mask: int) -> frozenset[int]:
    return frozenset(iter_bits(mask))


class Graph:
    """Simple undirected graph on ``0..n-1``.

    Instances are immutable and hashable. ``adj`` is a tuple of ints.
    """

    __slots__ = ("n", "adj", "_full")

    def __init__(self, n: int, adj: Iterable[int], *, check: bool = True):
        adj = tuple(adj)
        if check:
            if not 0 <= n <= MAX_VERTICES:
                raise PreconditionError(f"vertex count {n} outside 0..{MAX_VERTICES}")
            if len(adj) != n:
                raise PreconditionError(f"expected {n} adjacency rows, got {len(adj)}")
            full = (1 << n) - 1
            for u, row in enumerate(adj):
                if row < 0 or row & ~full:
                    raise PreconditionError(f"row {u} has bits outside 0..{n - 1}")
                if row >> u & 1:
                    raise PreconditionError(f"self-loop at {u}")
                for w in iter_bits(row):
                    if not adj[w] >> u & 1:
                        raise PreconditionError(f"asymmetric adjacency between {u} and {w}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "_full", (1 << n) - 1)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"

    def __reduce__(self):
        return (_rebuild, (self.n, self.adj))

    # construction

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full ^ (1 << v) for v in range(n)], check=False)

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise PreconditionError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, a: int, b: int) -> "Graph":
        return cls.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        return cls.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    @classmethod
    def wheel(cls, rim: int) -> "Graph":
        """Hub 0 joined to a rim cycle on 1..rim."""
        edges = [(0, i) for i in range(1, rim + 1)]
        edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
        return cls.from_edges(rim + 1, edges)

    @classmethod
    def petersen(cls) -> "Graph":
        outer = [(i, (i + 1) % 5) for i in range(5)]
        spokes = [(i, i + 5) for i in range(5)]
        inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
        return cls.from_edges(10, outer + spokes + inner)

    # queries

    @property
    def vertex_mask(self) -> int:
        return self._full

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def neighbor_mask(self, v: int) -> int:
        return self.adj[v]

    def neighborhood_of(self, mask: int) -> int:
        """Vertices adjacent to some vertex of ``mask`` (may overlap ``mask``)."""
        out = 0
        for v in iter_bits(mask):
            out |= self.adj[v]
        return out

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in iter_bits(self.adj[u] >> (u + 1)):
                yield u, u + 1 + v

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(row.bit_count() for row in self.adj)

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return max(row.bit_count() for row in self.adj)

    def is_complete(self) -> bool:
        return all(row.bit_count() == self.n - 1 for row in self.adj)

    def is_independent(self, mask: int) -> bool:
        for v in iter_bits(mask):
            if self.adj[v] & mask:
                return False
        return True

    # derived graphs

    def complement(self) -> "Graph":
        full = self._full
        return Graph(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)], check=False)

    def restrict(self, mask: int) -> "Graph":
        """Same vertex labels, only edges inside ``mask`` kept."""
        return Graph(
            self.n,
            [(row & mask) if mask >> v & 1 else 0 for v, row in enumerate(self.adj)],
            check=False,
        )

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Relabeled induced subgraph and the list mapping new labels to old."""
        order = sorted(set(vertices))
        index = {v: i for i, v in enumerate(order)}
        rows = []
        for v in order:
            rows.append(to_mask(index[w] for w in iter_bits(self.adj[v]) if w in index))
        return Graph(len(order), rows, check=False), order

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows, check=False)

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows, check=False)


def _rebuild(n: int, adj: tuple[int, ...]) -> Graph:
    return Graph(n, adj, check=False)


def as_mask(g: Graph, vertices: Optional[VertexSet]) -> int:
    """Normalize a vertex collection (or None for 'no vertices') to a mask."""
    if vertices is None:
        return 0
    if isinstance(vertices, int):
        raise TypeError("pass vertex collections as iterables, not raw masks")
    m = to_mask(vertices)
    if m & ~g.vertex_mask:
        raise PreconditionError("vertex set contains vertices outside the graph")
    return m


# traversal helpers


@dataclass(frozen=True)
class BfsLayers:
    """Distance layers from ``source``; ``masks[i]`` holds distance-i vertices."""

    source: int
    masks: tuple[int, ...]

    @property
    def layers(self) -> tuple[frozenset[int], ...]:
        return tuple(mask_to_set(m) for m in self.masks)

    def distance(self, v: int) -> Optional[int]:
        for i, m in enumerate(self.masks):
            if m >> v & 1:
                return i
        return None

    @property
    def reached(self) -> int:
        out = 0
        for m in self.masks:
            out |= m
        return out


def bfs_layers(g: Graph, source: int, forbidden: Optional[VertexSet] = None) -> BfsLayers:
    """Exact distance layering of ``g - forbidden`` from ``source``."""
    forb = as_mask(g, forbidden)
    if not 0 <= source < g.n:
        raise PreconditionError(f"source {source} not a vertex")
    if forb >> source & 1:
        raise PreconditionError("source is forbidden")
    return _bfs_layers_mask(g.adj, source, g.vertex_mask & ~forb)


def _bfs_layers_mask(adj: tuple[int, ...], source: int, allowed: int) -> BfsLayers:
    frontier = 1 << source
    seen = frontier
    layers = []
    while frontier:
        layers.append(frontier)
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return BfsLayers(source, tuple(layers))


def reach_mask(adj: tuple[int, ...], start: int, allowed: int) -> int:
    """Vertices reachable from the set ``start`` inside ``allowed``."""
    seen = start & allowed
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(g: Graph, mask: Optional[int] = None) -> list[int]:
    """Connected components of ``g[mask]`` as masks, ordered by least vertex."""
    remaining = g.vertex_mask if mask is None else mask
    out = []
    while remaining:
        comp = reach_mask(g.adj, remaining & -remaining, remaining)
        out.append(comp)
        remaining &= ~comp
    return out


def is_connected(g: Graph, mask: Optional[int] = None) -> bool:
    m = g.vertex_mask if mask is None else mask
    if m == 0:
        return True
    return reach_mask(g.adj, m & -m, m) == m


def shortest_path(g: Graph, source: int, target: int, allowed: Optional[int] = None) -> Optional[list[int]]:
    """Lexicographically first shortest path inside ``allowed`` (mask)."""
    allowed = g.vertex_mask if allowed is None else allowed
    if not (allowed >> source & 1 and allowed >> target & 1):
        return None
    if source == target:
        return [source]
    parent = {source: -1}
    frontier = [source]
    seen = 1 << source
    while frontier:
        nxt = []
        for v in frontier:
            for w in iter_bits(g.adj[v] & allowed & ~seen):
                seen |= 1 << w
                parent[w] = v
                if w == target:
                    path = [w]
                    while parent[path[-1]] != -1:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                nxt.append(w)
        frontier = nxt
    return None


def find_edge_in(g: Graph, s: VertexSet) -> Optional[tuple[int, int]]:
    """Lexicographically smallest edge with both ends in ``s``, else None."""
    return find_edge_in_mask(g, as_mask(g, s))


def find_edge_in_mask(g: Graph, mask: int) -> Optional[tuple[int, int]]:
    for u in iter_bits(mask):
        hit = g.adj[u] & mask & ~((2 << u) - 1)
        if hit:
            return u, lowest(hit)
    return None


def find_triangle(g: Graph, allowed: Optional[int] = None) -> Optional[tuple[int, int, int]]:
    allowed = g.vertex_mask if allowed is None else allowed
    for u in iter_bits(allowed):
        nu = g.adj[u] & allowed
        e = find_edge_in_mask(g, nu)
        if e is not None:
            return u, e[0], e[1]
    return None


def all_pairs_distances(g: Graph) -> list[list[Optional[int]]]:
    """Floyd-Warshall distances; None for unreachable pairs. Test oracle only."""
    inf = float("inf")
    n = g.n
    d = [[0 if i == j else (1 if g.has_edge(i, j) else inf) for j in range(n)] for i in range(n)]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == inf:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return [[None if x == inf else int(x) for x in row] for row in d]


def edge_pairs(vertices: Iterable[int]) -> Iterator[tuple[int, int]]:
    return combinations(sorted(vertices), 2)
