"""Helpers shared by the range pipelines: cycle chords, P5 tests, gluing."""

from __future__ import annotations

from typing import Optional, Sequence

from ..errors import BudgetExceeded, InvariantViolation, PreconditionError
from ..graph import Graph, components, iter_bits
from ..paths import OrientedCycle, Path, cycle_violation
from ..search import has_path_on


def cycle_arcs(g: Graph, c: OrientedCycle, spans: Sequence[int] = (2, 3)) -> list[tuple[int, int]]:
    """Chords of ``c`` as ``(start position, span)``, walking forward."""
    vs = c.vertices
    m = len(vs)
    out = []
    for s in spans:
        if m - s < 2:
            # the chord would be a cycle edge
            continue
        for i in range(m):
            if g.has_edge(vs[i], vs[(i + s) % m]):
                out.append((i, s))
    return sorted(out)


def _arc_sets(i: int, s: int, m: int) -> tuple[set[int], set[int]]:
    inner = {(i + t) % m for t in range(1, s)}
    return inner, {i % m, (i + s) % m}


def arc_packing(arcs: Sequence[tuple[int, int]], m: int) -> list[tuple[int, int]]:
    """Greedy family of arcs that overlap at most in an end."""
    chosen: list[tuple[int, int]] = []
    inner_used: set[int] = set()
    closed_used: set[int] = set()
    for i, s in sorted(arcs, key=lambda a: (a[1], a[0])):
        inner, ends = _arc_sets(i, s, m)
        if inner & closed_used or ends & inner_used:
            continue
        chosen.append((i, s))
        inner_used |= inner
        closed_used |= inner | ends
    return chosen


def count_cycle_chords(g: Graph, c: OrientedCycle, spans: Sequence[int] = (2, 3)) -> int:
    return len(arc_packing(cycle_arcs(g, c, spans), len(c)))


def shorten_cycle_by(g: Graph, c: OrientedCycle, t: int, spans: Sequence[int] = (2, 3)) -> Optional[OrientedCycle]:
    """Drop exactly ``t`` vertices of ``c`` by contracting non-intersecting chords."""
    if t == 0:
        return c
    m = len(c)
    if t < 0 or m - t < 3:
        return None
    arcs = cycle_arcs(g, c, spans)
    # depth-first over arcs in position order; t is small in every caller
    best: list[Optional[list[tuple[int, int]]]] = [None]
    steps = [0]

    def dfs(start: int, need: int, inner_used: set[int], closed_used: set[int], picked: list[tuple[int, int]]) -> bool:
        steps[0] += 1
        if steps[0] > 20_000:
            return False
        if need == 0:
            best[0] = list(picked)
            return True
        for k in range(start, len(arcs)):
            i, s = arcs[k]
            if s - 1 > need:
                continue
            inner, ends = _arc_sets(i, s, m)
            if inner & closed_used or ends & inner_used:
                continue
            picked.append((i, s))
            if dfs(k + 1, need - (s - 1), inner_used | inner, closed_used | inner | ends, picked):
                return True
            picked.pop()
        return False

    if not dfs(0, t, set(), set(), []):
        return None
    drop: set[int] = set()
    for i, s in best[0]:
        drop |= _arc_sets(i, s, m)[0]
    seq = tuple(v for k, v in enumerate(c.vertices) if k not in drop)
    if cycle_violation(g, seq) is not None or len(seq) != m - t:
        raise InvariantViolation("chord contraction broke the cycle", {"cycle": list(c), "arcs": best[0]})
    return OrientedCycle(seq)


def has_p5(g: Graph, mask: int, budget: int = 200_000) -> bool:
    """Whether ``g[mask]`` contains a path on five vertices."""
    if mask.bit_count() < 5:
        return False
    return has_path_on(g, 5, mask, budget=budget) is not None


def outside_components(g: Graph, c: OrientedCycle, exclude: int = 0) -> list[int]:
    return components(g, g.vertex_mask & ~c.mask & ~exclude)


def is_forest_mask(g: Graph, mask: int) -> bool:
    edges = sum((g.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2
    return edges == mask.bit_count() - len(components(g, mask))


def glue(g: Graph, p: Sequence[int], q: Sequence[int]) -> OrientedCycle:
    """Cycle from two paths with the same ends and disjoint interiors."""
    p, q = list(p), list(q)
    if {p[0], p[-1]} != {q[0], q[-1]}:
        raise PreconditionError("paths do not share their ends")
    if q[0] != p[-1]:
        q = q[::-1]
    seq = p + q[1:-1]
    bad = cycle_violation(g, seq)
    if bad is not None:
        raise InvariantViolation(f"glued cycle is invalid: {bad}", {"p": p, "q": q})
    return OrientedCycle(tuple(seq))


def cycle_path_between(c: OrientedCycle, p: Path) -> Optional[list[int]]:
    """The rest of ``c`` once the subpath ``p`` is removed, from ``p.end`` to ``p.start``."""
    if not c.contains_path(p):
        return None
    a, b = p.start, p.end
    fwd = c.walk(a, b)
    if fwd == list(p.vertices):
        return c.walk(b, a)
    return c.walk(b, a, "backward")


def budgeted(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except BudgetExceeded:
        return None
