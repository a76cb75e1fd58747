"""Paths, oriented cycles, chords and chord contraction.

Orientation notation: on an oriented cycle ``C`` the predecessor of ``u`` is
``u^-`` and ``u^-i`` is reached by ``i`` backward steps. ``C_{u->v}`` is the
u-v arc containing the successor of ``u``; ``C_{u<-v}`` is the other arc,
read from ``u`` backwards to ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import PreconditionError
from .graph import Graph

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class Violation:
    """Why a vertex sequence is not a path or cycle of the ambient graph."""

    kind: str  # "duplicate", "non-edge", "too-short", "out-of-range"
    pair: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind} at {self.pair}" if self.pair else self.kind


@dataclass(frozen=True)
class Path:
    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if not vs:
            raise PreconditionError("a path needs at least one vertex")
        if len(set(vs)) != len(vs):
            raise PreconditionError(f"path repeats a vertex: {vs}")

    @property
    def order(self) -> int:
        return len(self.vertices)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    @property
    def start(self) -> int:
        return self.vertices[0]

    @property
    def end(self) -> int:
        return self.vertices[-1]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    @cached_property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    @cached_property
    def interior_mask(self) -> int:
        if len(self.vertices) <= 2:
            return 0
        return self.mask & ~(1 << self.vertices[0]) & ~(1 << self.vertices[-1])

    @cached_property
    def index(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.index

    def reversed(self) -> "Path":
        return Path(self.vertices[::-1])

    def edges(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges())

    def validate(self, g: Graph) -> Optional[Violation]:
        return path_violation(g, self.vertices)

    def to_json(self) -> list[int]:
        return list(self.vertices)


def path_violation(g: Graph, seq: Sequence[int]) -> Optional[Violation]:
    seen = set()
    for v in seq:
        if not 0 <= v < g.n:
            return Violation("out-of-range", (v,))
        if v in seen:
            return Violation("duplicate", (v,))
        seen.add(v)
    for u, v in zip(seq, seq[1:]):
        if not g.has_edge(u, v):
            return Violation("non-edge", (u, v))
    return None


def cycle_violation(g: Graph, seq: Sequence[int]) -> Optional[Violation]:
    if len(seq) < 3:
        return Violation("too-short", tuple(seq))
    bad = path_violation(g, seq)
    if bad is not None:
        return bad
    if not g.has_edge(seq[-1], seq[0]):
        return Violation("non-edge", (seq[-1], seq[0]))
    return None


@dataclass(frozen=True)
class OrientedCycle:
    """A cycle with a fixed direction, stored from its least vertex.

    ``vertices[i+1]`` is the successor of ``vertices[i]`` (cyclically).
    """

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        if len(vs) < 3:
            raise PreconditionError("a cycle needs at least 3 vertices")
        if len(set(vs)) != len(vs):
            raise PreconditionError(f"cycle repeats a vertex: {vs}")
        i = vs.index(min(vs))
        object.__setattr__(self, "vertices", vs[i:] + vs[:i])

    @cached_property
    def pos(self) -> dict[int, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def mask(self) -> int:
        m = 0
        for v in self.vertices:
            m |= 1 << v
        return m

    @property
    def length(self) -> int:
        return len(self.vertices)

    @property
    def orientation(self) -> int:
        """+1 if the successor of the least vertex is below its predecessor."""
        return 1 if self.vertices[1] < self.vertices[-1] else -1

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __contains__(self, v) -> bool:
        return v in self.pos

    def _index(self, u: int) -> int:
        try:
            return self.pos[u]
        except KeyError:
            raise PreconditionError(f"vertex {u} is not on the cycle") from None

    def succ(self, u: int, i: int = 1) -> int:
        vs = self.vertices
        return vs[(self._index(u) + i) % len(vs)]

    def pred(self, u: int, i: int = 1) -> int:
        vs = self.vertices
        return vs[(self._index(u) - i) % len(vs)]

    def forward_distance(self, u: int, v: int) -> int:
        """Steps from ``u`` to ``v`` along the orientation."""
        return (self._index(v) - self._index(u)) % len(self.vertices)

    def distance(self, u: int, v: int) -> int:
        d = self.forward_distance(u, v)
        return min(d, len(self.vertices) - d)

    def walk(self, a: int, b: int, direction: str = FORWARD) -> list[int]:
        """Vertices from ``a`` to ``b`` inclusive; ``a == b`` gives ``[a]``."""
        vs = self.vertices
        m = len(vs)
        i, j = self._index(a), self._index(b)
        if direction == FORWARD:
            steps = (j - i) % m
            return [vs[(i + t) % m] for t in range(steps + 1)]
        if direction == BACKWARD:
            steps = (i - j) % m
            return [vs[(i - t) % m] for t in range(steps + 1)]
        raise PreconditionError(f"unknown direction {direction!r}")

    def reversed(self) -> "OrientedCycle":
        return OrientedCycle(self.vertices[::-1])

    def rotated_to(self, u: int) -> list[int]:
        i = self._index(u)
        return list(self.vertices[i:] + self.vertices[:i])

    def edges(self) -> list[tuple[int, int]]:
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges())

    def contains_path(self, p: Path) -> bool:
        """True if every edge of ``p`` is an edge of this cycle."""
        es = self.edge_set()
        return all(frozenset(e) in es for e in p.edges())

    def validate(self, g: Graph) -> Optional[Violation]:
        return cycle_violation(g, self.vertices)

    def to_json(self) -> list[int]:
        return list(self.vertices)


def predecessor(c: OrientedCycle, u: int, i: int = 1) -> int:
    if i < 0:
        raise PreconditionError("step count must be non-negative")
    return c.pred(u, i)


def segment(c: OrientedCycle, u: int, v: int, direction: str = FORWARD) -> Path:
    """``C_{u->v}`` (forward) or ``C_{u<-v}`` (backward) as a path from u to v."""
    if u == v:
        raise PreconditionError("segment ends must differ")
    return Path(c.walk(u, v, direction))


def validate_cycle(g: Graph, c) -> Optional[Violation]:
    """None if ``c`` is a cycle of ``g``; otherwise the first violation."""
    seq = c.vertices if isinstance(c, OrientedCycle) else tuple(c)
    return cycle_violation(g, seq)


def cycle_from_path(p: Path) -> OrientedCycle:
    return OrientedCycle(p.vertices)


# chords


@dataclass(frozen=True)
class Chord:
    """Edge between host positions ``i < j`` with ``j - i`` the span."""

    a: int
    b: int
    span: int

    def __post_init__(self):
        if self.span not in (2, 3):
            raise PreconditionError(f"chord span must be 2 or 3, got {self.span}")


@dataclass(frozen=True)
class ChordedPath:
    path: Path
    chords: tuple[Chord, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(sorted(self.chords, key=self._pos)))

    def _pos(self, c: Chord) -> int:
        return self.path.index.get(c.a, -1)

    @property
    def span2(self) -> int:
        return sum(1 for c in self.chords if c.span == 2)

    @property
    def span3(self) -> int:
        return sum(1 for c in self.chords if c.span == 3)

    @property
    def capacity(self) -> int:
        """Largest shortening available through contraction."""
        return self.span2 + 2 * self.span3

    def intervals(self) -> list[tuple[int, int]]:
        idx = self.path.index
        return [(idx[c.a], idx[c.b]) for c in self.chords]

    def validate(self, g: Graph) -> Optional[str]:
        bad = self.path.validate(g)
        if bad is not None:
            return f"path: {bad}"
        idx = self.path.index
        for c in self.chords:
            if c.a not in idx or c.b not in idx:
                return f"chord {c} leaves the path"
            if idx[c.b] - idx[c.a] != c.span:
                return f"chord {c} has wrong span"
            if not g.has_edge(c.a, c.b):
                return f"chord {c} is not an edge"
        if not chords_non_intersecting(self.intervals()):
            return "chords intersect"
        return None

    def shortened(self, k_prime: int) -> Path:
        return contract_chords(self, k_prime)


def chords_non_intersecting(intervals: Iterable[tuple[int, int]]) -> bool:
    """Chord arcs may share an endpoint but nothing more."""
    ivs = sorted(intervals)
    for (i1, j1), (i2, j2) in combinations(ivs, 2):
        if i2 < j1 and i1 < j2:
            return False
    return True


def path_chords(g: Graph, p: Path, spans: tuple[int, ...] = (2, 3)) -> list[Chord]:
    vs = p.vertices
    out = []
    for i, u in enumerate(vs):
        for s in spans:
            if i + s < len(vs) and g.has_edge(u, vs[i + s]):
                out.append(Chord(u, vs[i + s], s))
    return out


def greedy_chord_packing(chords: Sequence[Chord], index: dict[int, int]) -> list[Chord]:
    """Maximum non-intersecting subfamily by earliest right end."""
    ordered = sorted(chords, key=lambda c: (index[c.b], index[c.a]))
    chosen: list[Chord] = []
    last = -1
    for c in ordered:
        if index[c.a] >= last:
            chosen.append(c)
            last = index[c.b]
    return chosen


def cycle_span2_chords(g: Graph, c: OrientedCycle) -> list[tuple[int, int, int]]:
    """Triples ``(w^-, w, w^+)`` whose outer pair is adjacent.

    Distinct middles give distinct skipped interiors, so any set of these
    with pairwise non-overlapping arcs can be contracted together.
    """
    vs = c.vertices
    m = len(vs)
    if m < 4:
        return []
    return [(vs[i - 1], vs[i], vs[(i + 1) % m]) for i in range(m) if g.has_edge(vs[i - 1], vs[(i + 1) % m])]


def max_cycle_span2_packing(g: Graph, c: OrientedCycle) -> list[tuple[int, int, int]]:
    """A largest family of span-2 chords of ``c`` whose arcs overlap only at ends."""
    triples = cycle_span2_chords(g, c)
    m = len(c)
    if not triples:
        return []
    if len(triples) == m:
        return triples[0 : m // 2 * 2 : 2] if m % 2 == 0 else triples[0 : m - 1 : 2]
    pos = c.pos
    # cut the circle at a vertex that is no chord's middle, then greedy
    middles = {pos[t[1]] for t in triples}
    start = next(i for i in range(m) if i not in middles)
    order = sorted(triples, key=lambda t: (pos[t[1]] - start) % m)
    chosen = []
    last = -10
    for t in order:
        mid = (pos[t[1]] - start) % m
        if mid - 1 >= last:
            chosen.append(t)
            last = mid + 1
    return chosen


def contract_chords(cp: ChordedPath, k_prime: int) -> Path:
    """Shorten ``cp.path`` by exactly ``k_prime`` vertices using its chords.

    Uses ``b' = min(k'//2, b)`` span-3 chords and ``a' = k' - 2b'`` span-2
    chords, taking the first ones along the path.
    """
    a, b = cp.span2, cp.span3
    if k_prime < 0:
        raise PreconditionError("k' must be non-negative")
    b_used = min(k_prime // 2, b)
    a_used = k_prime - 2 * b_used
    if a_used > a:
        raise PreconditionError(
            f"cannot shorten by {k_prime} with {a} span-2 and {b} span-3 chords"
        )
    picked = [c for c in cp.chords if c.span == 3][:b_used] + [c for c in cp.chords if c.span == 2][:a_used]
    idx = cp.path.index
    drop = set()
    for c in picked:
        i, j = idx[c.a], idx[c.b]
        drop.update(cp.path.vertices[i + 1 : j])
    return Path(tuple(v for v in cp.path.vertices if v not in drop))


def splice(*parts: Sequence[int]) -> list[int]:
    """Concatenate vertex runs, merging a shared vertex at each seam."""
    out: list[int] = []
    for part in parts:
        part = list(part)
        if out and part and out[-1] == part[0]:
            part = part[1:]
        out.extend(part)
    return out
