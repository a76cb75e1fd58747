"""Short paths carrying many non-intersecting chords of span 2 or 3.

Such a path can be shortened by any amount up to its chord count (see
:func:`pancyclic.paths.contract_chords`), which makes it the adjustable piece
of every long-cycle construction.

The builder grows the path at its last vertex ``x``, trying in order:

1. ``x`` lies in a triangle ``x y z`` outside the path: append ``y z``
   (chord ``x z``).
2. a neighbour ``y`` of ``x`` lies in a triangle ``y z w`` avoiding ``x``:
   append ``y z w`` (chord ``y w``).
3. otherwise ``N(x) - y`` and ``N(y) - x`` are independent and disjoint; an
   edge ``z w`` between them gives ``x z w y`` (chord ``x y`` of span 3).
"""

from __future__ import annotations

from typing import Optional

from .errors import ConstructionStall, InvariantViolation, PreconditionError
from .graph import Graph, find_edge_in_mask, find_triangle, iter_bits, lowest, shortest_path
from .independence import independence_number
from .paths import Chord, ChordedPath, OrientedCycle, Path


def build_chorded_path(
    g: Graph, k: int, *, alpha: Optional[int] = None, strict: bool = True
) -> ChordedPath:
    """Path of length at most ``3k`` with ``k`` non-intersecting chords.

    With ``strict`` the inputs must satisfy min degree > alpha and
    ``k <= alpha / 6``; without it the builder just tries and raises
    :class:`ConstructionStall` if a step finds nothing.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if alpha is None:
        alpha = independence_number(g)
    if strict:
        if g.min_degree() <= alpha:
            raise PreconditionError(
                f"minimum degree {g.min_degree()} does not exceed alpha={alpha}",
                {"min_degree": g.min_degree(), "alpha": alpha},
            )
        if 6 * k > alpha:
            raise PreconditionError(f"k={k} exceeds alpha/6 with alpha={alpha}", {"k": k, "alpha": alpha})

    tri = find_triangle(g)
    if tri is None:
        raise ConstructionStall("graph has no triangle", {"k": k})
    verts = list(tri)
    chords = [Chord(tri[0], tri[2], 2)]
    used = (1 << tri[0]) | (1 << tri[1]) | (1 << tri[2])
    adj = g.adj
    full = g.vertex_mask

    for i in range(1, k):
        x = verts[-1]
        free = full & ~used  # G' = G - (V(P) - x), minus x itself
        nx_ = adj[x] & free
        # case 1: x in a triangle of G'
        e = find_edge_in_mask(g, nx_)
        if e is not None:
            y, z = e
            verts += [y, z]
            chords.append(Chord(x, z, 2))
            used |= (1 << y) | (1 << z)
            continue
        # case 2: a neighbour of x in a triangle avoiding x
        step = None
        for y in iter_bits(nx_):
            e = find_edge_in_mask(g, adj[y] & free & ~(1 << y))
            if e is not None:
                step = (y, e[0], e[1])
                break
        if step is not None:
            y, z, w = step
            verts += [y, z, w]
            chords.append(Chord(y, w, 2))
            used |= (1 << y) | (1 << z) | (1 << w)
            continue
        # case 3: edge between the two independent neighbourhoods
        if not nx_:
            raise ConstructionStall("path end has no free neighbour", {"path": verts, "step": i})
        y = lowest(nx_)
        n_x = nx_ & ~(1 << y)
        n_y = adj[y] & free & ~(1 << x)
        e = find_edge_in_mask(g, n_x | n_y)
        if e is None:
            state = {"path": verts, "step": i, "alpha": alpha, "N_x": n_x.bit_count(), "N_y": n_y.bit_count()}
            if n_x.bit_count() + n_y.bit_count() > alpha:
                raise InvariantViolation("neighbourhood union exceeds alpha yet spans no edge", state)
            raise ConstructionStall("neighbourhoods too small to force an edge", state)
        z, w = e
        if not n_x >> z & 1:
            z, w = w, z
        verts += [z, w, y]
        chords.append(Chord(x, y, 3))
        used |= (1 << z) | (1 << w) | (1 << y)

    cp = ChordedPath(Path(tuple(verts)), tuple(chords))
    bad = cp.validate(g)
    if bad is not None or cp.path.length > 3 * k:
        raise InvariantViolation("builder output fails its contract", {"path": verts, "problem": bad})
    return cp


def extend_to_short_cycle(
    g: Graph, cp: ChordedPath, len_budget: int, *, kappa: Optional[int] = None
) -> OrientedCycle:
    """Shortest cycle containing ``cp.path``, closed through the rest of the graph."""
    p = cp.path if isinstance(cp, ChordedPath) else cp
    if p.order < 2:
        raise PreconditionError("path needs two distinct ends")
    if kappa is not None and kappa - p.order < 2:
        raise PreconditionError(f"kappa={kappa} too small for a path on {p.order} vertices")
    x, y = p.ends
    allowed = g.vertex_mask & ~p.interior_mask
    if p.order == 2:
        # a bare edge must not close through itself
        g = g.without_edges([(x, y)])
    q = shortest_path(g, x, y, allowed)
    if q is None:
        raise ConstructionStall("no return path between the path ends", {"ends": (x, y)})
    length = p.order + len(q) - 2
    if length > len_budget:
        raise ConstructionStall(
            f"shortest closing cycle has length {length} > budget {len_budget}",
            {"length": length, "budget": len_budget},
        )
    seq = list(p.vertices) + list(reversed(q[1:-1]))
    return OrientedCycle(tuple(seq))
