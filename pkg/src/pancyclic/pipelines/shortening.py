"""Same-ends path shortening with a bounded shortfall.

Two windows are offered: one scaled by the minimum degree and one by the
independence number. Both are served by the same search, which tries chord
skips along the path and detours through vertices off the path, and takes
the smallest strict saving it finds.
"""

from __future__ import annotations

from math import ceil
from typing import Optional

from ..errors import ConstructionStall, InvariantViolation, PreconditionError
from ..graph import Graph, iter_bits
from ..paths import Path, path_violation


def _bfs(g: Graph, s: int, allowed: int) -> tuple[dict[int, int], dict[int, int]]:
    dist, parent = {s: 0}, {s: -1}
    frontier = [s]
    seen = 1 << s
    while frontier:
        nxt = []
        for a in frontier:
            for b in iter_bits(g.adj[a] & allowed & ~seen):
                seen |= 1 << b
                dist[b] = dist[a] + 1
                parent[b] = a
                nxt.append(b)
        frontier = nxt
    return dist, parent


def mindeg_window(g: Graph, p: Path) -> int:
    return ceil(20 * g.n / max(1, g.min_degree()))


def indep_window(p: Path, alpha: int) -> int:
    return ceil(20 * alpha * alpha / p.order)


def shorten_within(g: Graph, p: Path, max_drop: int, allowed: Optional[int] = None) -> Path:
    """Same-ends path ``p'`` with ``|p| - max_drop <= |p'| < |p|``.

    ``allowed`` limits the vertices a detour may use (path vertices are
    always allowed). Raises :class:`ConstructionStall` when no strict
    shortening fits the window.
    """
    if max_drop < 1:
        raise PreconditionError("window must allow dropping at least one vertex")
    vs = list(p.vertices)
    m = len(vs)
    if m < 3:
        raise ConstructionStall("a path on fewer than 3 vertices cannot shrink", {"order": m})
    allowed = g.vertex_mask if allowed is None else allowed
    off = allowed & ~p.mask
    best: Optional[tuple[int, int, int, list[int]]] = None  # (drop, i, j, detour interior)

    # chord skips: p_i p_j with j - i >= 2
    for i in range(m):
        row = g.adj[vs[i]]
        for j in range(i + 2, m):
            if row >> vs[j] & 1:
                drop = j - i - 1
                if drop <= max_drop and (best is None or drop < best[0]):
                    best = (drop, i, j, [])
        if best is not None and best[0] == 1:
            break

    # detours through off-path vertices: replace p_i..p_j by a shorter route
    if (best is None or best[0] > 1) and off:
        for i in range(m):
            if not g.adj[vs[i]] & off:
                continue
            dist, parent = _bfs(g, vs[i], off)
            for j in range(i + 3, m):
                d, last = None, None
                for w in iter_bits(g.adj[vs[j]] & off):
                    if w in dist and (d is None or dist[w] < d):
                        d, last = dist[w], w
                if d is None:
                    continue
                drop = (j - i) - (d + 1)
                if 1 <= drop <= max_drop and (best is None or drop < best[0]):
                    mid = [last]
                    while parent[mid[-1]] != vs[i]:
                        mid.append(parent[mid[-1]])
                    best = (drop, i, j, mid[::-1])
            if best is not None and best[0] == 1:
                break

    if best is None:
        raise ConstructionStall(
            "no strict shortening inside the window", {"order": m, "max_drop": max_drop}
        )
    drop, i, j, mid = best
    seq = vs[: i + 1] + mid + vs[j:]
    out = Path(tuple(seq))
    if path_violation(g, seq) is not None or out.ends != p.ends or not (m - max_drop <= len(seq) < m):
        raise InvariantViolation("shortening broke its contract", {"path": vs, "result": seq, "window": max_drop})
    return out


def shorten_path_mindeg(g: Graph, p: Path, *, strict: bool = False, allowed: Optional[int] = None) -> Path:
    """Strictly shorter same-ends path, losing at most ``ceil(20n / min degree)`` vertices."""
    w = mindeg_window(g, p)
    if strict and p.length < 20 * g.n / max(1, g.min_degree()):
        raise PreconditionError(f"path length {p.length} below 20n/min degree", {"window": w})
    return shorten_within(g, p, w, allowed)


def shorten_path_indep(g: Graph, p: Path, alpha: int, *, strict: bool = False, allowed: Optional[int] = None) -> Path:
    """Strictly shorter same-ends path, losing at most ``ceil(20 alpha^2 / |P|)`` vertices."""
    if strict and p.order <= 4 * alpha:
        raise PreconditionError(f"path order {p.order} not above 4 alpha = {4 * alpha}")
    return shorten_within(g, p, indep_window(p, alpha), allowed)


def shorten_to(g: Graph, p: Path, lo: int, hi: int, alpha: int, allowed: Optional[int] = None) -> Path:
    """Repeatedly shorten ``p`` until its length lands in ``[lo, hi]``.

    Each step uses the wider of the two windows, capped so the result never
    undershoots ``lo``.
    """
    if lo > hi:
        raise PreconditionError("empty target interval")
    while p.length > hi:
        cap = min(max(mindeg_window(g, p), indep_window(p, alpha)), p.length - lo)
        if cap < 1:
            break
        p = shorten_within(g, p, cap, allowed)
    if not lo <= p.length <= hi:
        raise ConstructionStall("could not land in the target interval", {"length": p.length, "lo": lo, "hi": hi})
    return p
