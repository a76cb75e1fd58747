"""Middle lengths: from about ``n / alpha`` up to ``delta (n / alpha)^2``.

A chord-rich path ``P0`` and a companion path ``P1`` with the same ends give
a cycle of length at most ``n / alpha``. The companion is then lengthened in
small steps by detours through a disjoint short cycle until it is just long
enough, and the chords of ``P0`` absorb the overshoot.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor, isqrt
from typing import Optional

from ..chorded import build_chorded_path
from ..connectivity import disjoint_paths_mask
from ..errors import ConstructionStall, HypothesisViolation, InvariantViolation, PreconditionError
from ..finders import bipartite_matching
from ..graph import Graph, _bfs_layers_mask, find_edge_in_mask, iter_bits, lowest, shortest_path
from ..independence import max_independent_mask
from ..paths import Chord, ChordedPath, OrientedCycle, Path, contract_chords, path_violation
from ..profile import ConditionProfile, profile as compute_profile
from ..search import FOUND, find_cycle_of_length
from .base import RangeResult, with_fallback
from .common import glue
from .params import PipelineParams
from .shortening import shorten_to

SHORTCUT, LAYERED = "shortcut", "layered"

# ---------------------------------------------------------------------------
# a chord-rich path and a companion closing it


@dataclass(frozen=True)
class NOverAlphaPaths:
    p0: ChordedPath
    p1: Path
    branch: str
    bounds: dict = field(default_factory=dict, compare=False)

    def structural_violations(self, g: Graph) -> list[str]:
        out = []
        p0, p1 = self.p0.path, self.p1
        if p0.validate(g) is not None:
            out.append("p0 is not a path")
        if path_violation(g, p1.vertices) is not None:
            out.append("p1 is not a path")
        if set(p0.ends) != set(p1.ends):
            out.append("ends differ")
        if p0.interior_mask & p1.mask or p1.interior_mask & p0.mask:
            out.append("interiors meet")
        if self.p0.validate(g) is not None:
            out.append("chords invalid")
        if not any(c.span == 2 for c in self.p0.chords):
            out.append("no span-2 chord")
        return out


def _bounds(p0: ChordedPath, p1: Path, n: int, alpha: int, delta: Fraction) -> dict:
    unit = delta * n / alpha
    return {
        "p0_short": p0.path.length <= 7 * unit,
        "p1_long": p1.length >= unit,
        "total": p0.path.length + p1.length <= Fraction(n, alpha),
        "chords": len(p0.chords) >= unit,
    }


def _walk_from(g: Graph, start: int, length: int, allowed: int, budget: int) -> Optional[list[int]]:
    """A path with ``length`` edges starting at ``start`` inside ``allowed``."""
    path = [start]
    nodes = 0

    def dfs(used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return False
        if len(path) == length + 1:
            return True
        for w in iter_bits(g.adj[path[-1]] & allowed & ~used):
            path.append(w)
            if dfs(used | (1 << w)):
                return True
            path.pop()
        return False

    return path if dfs(1 << start) else None


def _orient(cp: ChordedPath, start: int) -> ChordedPath:
    if cp.path.start == start:
        return cp
    return ChordedPath(Path(tuple(reversed(cp.path.vertices))), cp.chords)


def n_over_alpha_paths(
    g: Graph,
    params: PipelineParams = PipelineParams(),
    *,
    alpha: Optional[int] = None,
    kappa: Optional[int] = None,
    delta=None,
    strict: bool = False,
    force_layered: bool = False,
) -> NOverAlphaPaths:
    """Paths ``P0``, ``P1`` with common ends and disjoint interiors, ``P0`` chord-rich.

    Tries the short return first and the layered construction second. The
    numeric bounds are recorded in ``bounds``; with ``strict`` a failed bound
    is an error, otherwise only the structure is enforced. ``force_layered``
    skips the short return so the layered construction can be exercised.
    """
    n = g.n
    if alpha is None or kappa is None:
        prof = compute_profile(g)
        alpha, kappa = prof.alpha, prof.kappa
    if kappa <= alpha:
        raise PreconditionError(f"kappa={kappa} does not exceed alpha={alpha}")
    delta = Fraction(params.delta if delta is None else delta)
    unit = delta * n / alpha
    k = max(1, round(unit))
    q1 = build_chorded_path(g, k, alpha=alpha, strict=False)
    x, y = q1.path.ends
    q2 = _walk_from(g, y, max(1, ceil(unit)), g.vertex_mask & ~q1.path.mask | (1 << y), params.step_budget)
    if q2 is None:
        raise ConstructionStall("no companion path leaving the chorded path", {"k": k})
    z = q2[-1]
    init = list(q1.path.vertices) + q2[1:]
    init_interior = sum(1 << v for v in init[1:-1])
    rest = g.vertex_mask & ~init_interior
    q3 = shortest_path(g, x, z, rest)
    limit = (1 - 4 * delta) * Fraction(n, alpha)
    if q3 is not None and len(q3) - 1 <= limit and not force_layered:
        p1 = Path(tuple(q2 + q3[::-1][1:]))  # y Q2 z Q3 x
        res = NOverAlphaPaths(_orient(q1, x), p1, SHORTCUT, _bounds(q1, p1, n, alpha, delta))
    else:
        res = _layered(g, q1, init, x, rest, alpha, kappa, delta, params, strict)
    bad = res.structural_violations(g)
    if bad:
        raise InvariantViolation("n-over-alpha paths are malformed", {"problems": bad, "branch": res.branch})
    if strict and not all(res.bounds.values()):
        raise ConstructionStall("n-over-alpha bounds fail at this size", {"bounds": res.bounds})
    return res


def _layered(g, q1, init, x, rest, alpha, kappa, delta, params, strict) -> NOverAlphaPaths:
    n = g.n
    eta = params.eta
    layers = list(_bfs_layers_mask(g.adj, x, rest).masks)
    cap = (1 + eta) * alpha
    hi = floor(eta * n / alpha) if strict else len(layers) - 7
    window = None
    for i in range(3 if strict else 1, hi + 1):
        block = layers[i : i + 7]
        if len(block) == 7 and all(b and b.bit_count() <= cap for b in block):
            window = i
            break
    if window is None and not strict:
        # desk relaxation: the seven consecutive layers with the smallest maximum
        cands = [i for i in range(1, len(layers) - 6)]
        if cands:
            window = min(cands, key=lambda i: (max(b.bit_count() for b in layers[i : i + 7]), i))
    if window is None:
        raise ConstructionStall("no window of seven small layers", {"layers": [b.bit_count() for b in layers]})
    U = layers[window : window + 7]

    # matchings between consecutive layers; chains through all seven
    nxt: dict[int, int] = {}
    prv: dict[int, int] = {}
    for j in range(6):
        for a, b in bipartite_matching(g, U[j], U[j + 1]):
            nxt[a] = b
            prv[b] = a
    chains: dict[int, tuple[int, ...]] = {}
    for w0 in iter_bits(U[0]):
        ch = [w0]
        while ch[-1] in nxt and len(ch) < 7:
            ch.append(nxt[ch[-1]])
        if len(ch) == 7:
            for w in ch:
                chains[w] = tuple(ch)
    Wl = [sum(1 << w for w in iter_bits(U[j]) if w in chains) for j in range(7)]
    W = 0
    for m in Wl:
        W |= m
    mid = Wl[1] | Wl[2] | Wl[3] | Wl[4] | Wl[5]
    if not Wl[3]:
        raise ConstructionStall("no full chain through the window", {"window": window})
    level = {w: j for j in range(7) for w in iter_bits(Wl[j])}

    lp = max(1, ceil(delta * n / alpha))
    pieces: list[list[int]] = []
    chords: list[Chord] = []
    used = 0  # vertices of the pieces
    blocked = 0  # whole chains touched by the pieces

    def block(vs):
        nonlocal used, blocked
        for v in vs:
            used |= 1 << v
            if v in chains:
                for w in chains[v]:
                    blocked |= 1 << w

    # first piece: a triangle at a middle-level vertex, inside the window if
    # possible, otherwise leaning on the initial path
    init_pos = {a: i for i, a in enumerate(init)}
    init_int = sum(1 << a for a in init[1:-1])
    first = None
    for u in iter_bits(Wl[3]):
        e = find_edge_in_mask(g, g.adj[u] & W)
        if e is not None:
            first = [e[0], e[1], u]
            break
    if first is None:
        for u in iter_bits(Wl[3]):
            e = find_edge_in_mask(g, g.adj[u] & (W | init_int))
            if e is None:
                continue
            v, w = e
            if w in init_pos and (v not in init_pos or init_pos[w] < init_pos[v]):
                v, w = w, v
            if v in init_pos:
                first = [v, w, u]
                break
    if first is None:
        raise ConstructionStall("no triangle at the middle level", {"window": window})
    pieces.append(first)
    chords.append(Chord(first[0], first[2], 2))
    block(first)

    for _ in range(2 * lp):
        u = pieces[-1][-1]
        free = W & ~blocked
        step = None
        for v in iter_bits(g.adj[u] & free):
            ch = chains[v]
            j = level[v]
            seg = list(ch[j : 4]) if j <= 3 else list(reversed(ch[3 : j + 1]))
            w = seg[-1]
            pool = (free & mid) & ~sum(1 << a for a in ch)
            q = _local_gadget(g, w, pool)
            if q is not None:
                step = (seg, q)
                break
        if step is None:
            raise ConstructionStall(
                "chain of pieces stalled",
                {"pieces": len(pieces), "target": 2 * lp + 1, "end_level": level.get(u), "free_neighbours": (g.adj[u] & free).bit_count()},
            )
        seg, (q, chord) = step
        piece = [u] + seg + q[1:]
        pieces.append(piece)
        chords.append(chord)
        block(piece)

    full = pieces[0][:]
    for pc in pieces[1:]:
        full += pc[1:]
    u0, u1 = full[0], full[-1]
    pmask = sum(1 << v for v in full)

    def closure(ui: int) -> Optional[list[int]]:
        if ui in init and not (W >> ui & 1):
            return init[: init.index(ui) + 1]
        avoid_chains = blocked | pmask
        for vi in iter_bits(g.adj[ui] & ~avoid_chains & rest):
            q = shortest_path(g, x, vi, (rest & ~pmask) | (1 << x))
            if q is not None:
                return q + [ui]
        return None

    c0, c1 = closure(u0), closure(u1)
    if c0 is None or c1 is None:
        raise ConstructionStall("could not close the chain back to the start", {"pieces": len(pieces)})
    in_c1 = set(c1)
    xp = max((i for i, v in enumerate(c0) if v in in_c1), default=0)
    q0 = c0[xp:]  # x' .. u0
    q1_ = c1[c1.index(c0[xp]) :][::-1]  # u1 .. x'
    split = sum(len(pc) - 1 for pc in pieces[:lp]) if lp < len(pieces) else len(full) - 1
    a = full[: split + 1]
    b = full[split:] + q1_[1:] + q0[1:]
    keep = [c for c in chords if c.a in set(a) and c.b in set(a)]
    cp = ChordedPath(Path(tuple(a)), tuple(keep))
    p1 = Path(tuple(b[::-1]))  # from a's end back to a's start
    p1 = Path(tuple(reversed(p1.vertices))) if p1.start != cp.path.end else p1
    out = NOverAlphaPaths(cp, p1, LAYERED, _bounds(cp, p1, n, alpha, delta))
    return out


def _local_gadget(g: Graph, w: int, pool: int) -> Optional[tuple[list[int], Chord]]:
    """Triangle at ``w``, triangle one step away, or a 4-cycle through ``w``, inside ``pool``."""
    nb = g.adj[w] & pool
    e = find_edge_in_mask(g, nb)
    if e is not None:
        w1, w2 = e
        return [w, w1, w2], Chord(w, w2, 2)
    for w1 in iter_bits(nb):
        e = find_edge_in_mask(g, g.adj[w1] & pool & ~(1 << w))
        if e is not None:
            w2, w3 = e
            return [w, w1, w2, w3], Chord(w1, w3, 2)
    for w1 in iter_bits(nb):
        for w3 in iter_bits(nb & ~(1 << w1)):
            common = g.adj[w1] & g.adj[w3] & pool & ~(1 << w)
            if common:
                w2 = lowest(common)
                return [w, w1, w2, w3], Chord(w, w3, 3)
    return None


# ---------------------------------------------------------------------------
# lengthening a path by a bounded amount


@dataclass(frozen=True)
class MidExtension:
    path: Path
    branch: str  # "short-paths", "long-paths" or "relaxed"


def mid_range_window(ell: int, r: int, n: int, alpha: int) -> bool:
    lo = max(4 * ell ** 0.5, 32 * alpha ** 0.5)
    return lo < r <= min(2 * ell, n / alpha, alpha) and ell <= n / 2


def _induced(g: Graph, p: tuple[int, ...]) -> list[int]:
    m = sum(1 << v for v in p)
    q = shortest_path(g, p[0], p[-1], m)
    return q


def mid_range_extend(
    g: Graph,
    p: Path,
    r: int,
    alpha: int,
    *,
    allowed: Optional[int] = None,
    strict: bool = False,
    budget: int = 200_000,
) -> MidExtension:
    """Same-ends path ``p'`` with ``len(p) < len(p') <= len(p) + r``.

    A cycle of length ``r // 2`` is found away from ``p``, joined to ``p`` by
    disjoint paths, and one of two detours through it is spliced in.
    """
    allowed = g.vertex_mask if allowed is None else allowed
    n_here = allowed.bit_count()
    ell = p.length
    if strict and not mid_range_window(ell, r, n_here, alpha):
        raise PreconditionError(f"r={r} outside the extension window for length {ell}")
    if r < 6:
        raise PreconditionError("r must be at least 6")
    if p.mask & ~allowed:
        raise PreconditionError("path leaves the allowed vertex set")
    clen = r // 2
    away = allowed & ~p.mask
    res = find_cycle_of_length(g, clen, budget, allowed=away)
    if res.status != FOUND:
        ind = max_independent_mask(g, away)
        if ind.bit_count() > alpha:
            raise HypothesisViolation("independent set above alpha", witness=frozenset(iter_bits(ind)))
        raise ConstructionStall(f"no {clen}-cycle away from the path", {"status": res.status})
    c = OrientedCycle(res.vertices)
    fan = disjoint_paths_mask(g, c.mask, p.mask, clen, allowed)
    links = {}
    for q in fan.paths:
        q = _induced(g, q)
        links[q[0]] = q  # keyed by the cycle vertex, ends on p
    idx = p.index
    vs = list(p.vertices)

    def splice(i_cyc, j_cyc, middle) -> Optional[list[int]]:
        qi, qj = links[i_cyc], links[j_cyc]
        ui, uj = qi[-1], qj[-1]
        a, b = idx[ui], idx[uj]
        if a > b:
            qi, qj, ui, uj, a, b = qj, qi, uj, ui, b, a
            middle = middle[::-1]
        seq = vs[: a + 1] + list(reversed(qi[:-1])) + middle[1:-1] + list(qj[:-1]) + vs[b:]
        return seq

    def ok(seq) -> bool:
        return ell < len(seq) - 1 <= ell + r and path_violation(g, seq) is None

    keys = sorted(links)
    short = [v for v in keys if len(links[v]) - 1 <= r / 4]
    pairs = sorted(
        ((abs(idx[links[a][-1]] - idx[links[b][-1]]), a, b) for i, a in enumerate(short) for b in short[i + 1 :]),
    )
    for _, a, b in pairs:
        arc1, arc2 = c.walk(a, b), c.walk(a, b, "backward")
        longer = arc1 if len(arc1) >= len(arc2) else arc2
        seq = splice(a, b, longer)
        if ok(seq):
            return _done(g, p, seq, r, "short-paths")

    long_ = [v for v in keys if len(links[v]) - 1 >= r / 4]
    lo, hi = r / 8, r / 4
    marks = {}
    for v in long_:
        q = links[v][::-1]  # from the path end outwards
        for d in range(len(q)):
            if d % 2 == 0 and lo <= d <= hi:
                marks[q[d]] = (v, d)
    for a in sorted(marks):
        for b in iter_bits(g.adj[a]):
            if b in marks and marks[b][0] != marks[a][0]:
                seq = _edge_splice(vs, idx, links, marks[a], marks[b])
                if seq is not None and ok(seq):
                    return _done(g, p, seq, r, "long-paths")
    if strict:
        raise ConstructionStall("neither detour fits the window", {"short": len(short), "long": len(long_)})

    # desk relaxation: any arc, any pair of link vertices
    for i, a in enumerate(keys):
        for b in keys[i + 1 :]:
            for arc in (c.walk(a, b), c.walk(a, b, "backward")):
                seq = splice(a, b, arc)
                if ok(seq):
                    return _done(g, p, seq, r, "relaxed")
    every = {}
    for v in keys:
        q = links[v][::-1]
        for d in range(1, len(q)):
            every[q[d]] = (v, d)
    for a in sorted(every):
        for b in iter_bits(g.adj[a]):
            if b in every and every[b][0] != every[a][0]:
                seq = _edge_splice(vs, idx, links, every[a], every[b])
                if seq is not None and ok(seq):
                    return _done(g, p, seq, r, "relaxed")
    raise ConstructionStall("no detour lengthens the path within the window", {"links": len(keys), "r": r})


def _edge_splice(vs, idx, links, ma, mb) -> Optional[list[int]]:
    (va, da), (vb, db) = ma, mb
    qa, qb = links[va][::-1], links[vb][::-1]  # both start on the path
    ia, ib = idx[qa[0]], idx[qb[0]]
    if ia > ib:
        qa, qb, da, db, ia, ib = qb, qa, db, da, ib, ia
    return vs[: ia + 1] + qa[1 : da + 1] + qb[1 : db + 1][::-1] + vs[ib:]


def _done(g: Graph, p: Path, seq: list[int], r: int, branch: str) -> MidExtension:
    out = Path(tuple(seq))
    if out.ends != p.ends or not p.length < out.length <= p.length + r or path_violation(g, seq) is not None:
        raise InvariantViolation("extension broke its contract", {"path": list(p), "result": seq, "r": r})
    return MidExtension(out, branch)


# ---------------------------------------------------------------------------
# driver


def middle_window(n: int, alpha: int, ell: int, delta) -> bool:
    delta = Fraction(delta)
    if not (4 * alpha * alpha >= n and alpha**3 <= delta**3 * n * n):
        return False
    return Fraction(n, alpha) <= ell <= delta * Fraction(n, alpha) ** 2


def _middle_core(g: Graph, ell: int, params: PipelineParams, prof: ConditionProfile) -> RangeResult:
    n, alpha = g.n, prof.alpha
    steps = []
    pair = n_over_alpha_paths(g, params, alpha=alpha, kappa=prof.kappa, delta=params.eta)
    cp, p1 = pair.p0, pair.p1
    steps.append(f"n-over-alpha {pair.branch} p0={cp.path.length} p1={p1.length}")
    k = len(cp.chords)
    ellp = ell - cp.path.length
    if ellp < 1:
        raise ConstructionStall("chorded path already longer than the target", {"p0": cp.path.length, "target": ell})
    allowed = g.vertex_mask & ~cp.path.interior_mask
    r = max(6, ceil(params.eta * n / (2 * alpha)))
    p2 = p1
    guard = 0
    while p2.length < ellp:
        guard += 1
        if guard > n:
            raise ConstructionStall("lengthening loop did not converge", {"length": p2.length})
        ext = mid_range_extend(g, p2, r, alpha, allowed=allowed, budget=params.step_budget * 20)
        p2 = ext.path
        steps.append(f"extend {ext.branch} -> {p2.length}")
    if p2.length > ellp + k:
        p2 = shorten_to(g, p2, ellp, ellp + k, alpha, allowed)
        steps.append(f"shorten -> {p2.length}")
    q = contract_chords(cp, cp.path.length - (ell - p2.length))
    out = glue(g, q.vertices, p2.vertices)
    return RangeResult(out, "middle:" + pair.branch, steps=tuple(steps))


def middle_range(
    g: Graph,
    ell: int,
    params: PipelineParams = PipelineParams(),
    *,
    profile: Optional[ConditionProfile] = None,
    allow_fallback: bool = True,
) -> RangeResult:
    """Cycle of length exactly ``ell`` through the middle-range pipeline."""
    if not 3 <= ell <= g.n:
        raise PreconditionError(f"length {ell} outside [3, {g.n}]")
    prof = profile or compute_profile(g)
    return with_fallback(g, ell, params.dfs_budget, lambda: _middle_core(g, ell, params, prof), allow_fallback)
