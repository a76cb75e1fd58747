"""Long cycles: lengths from about ``n / (delta alpha)`` up to ``n``.

The driver builds a short chord-rich path, closes it into a short cycle,
grows that cycle with rotations until the outside is P5-free or the cycle is
long enough, then either fills the last few vertices from the P5-free
remainder or shortens back down and lets the chords absorb the slack.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Iterator, Optional

from ..chorded import build_chorded_path, extend_to_short_cycle
from ..errors import (
    ConstructionStall,
    HypothesisViolation,
    InvariantViolation,
    PreconditionError,
    RotationError,
)
from ..graph import Graph, components, iter_bits, shortest_path
from ..paths import (
    ChordedPath,
    OrientedCycle,
    Path,
    contract_chords,
    greedy_chord_packing,
    max_cycle_span2_packing,
    path_chords,
)
from ..profile import ConditionProfile, profile as compute_profile
from ..rotation import RotationConfig, extend_into_component, rotate_c1, rotate_c2, rotate_c3, rotate_c4, rotate_c5
from ..search import longest_path_between
from .base import RangeResult, checked, with_fallback
from .common import count_cycle_chords, cycle_path_between, glue, has_p5, is_forest_mask, shorten_cycle_by
from .params import PipelineParams
from .shortening import shorten_to
from .structure import extend_keeping_forest

# ---------------------------------------------------------------------------
# improvement loop


@dataclass(frozen=True)
class LongCycle:
    cycle: OrientedCycle
    keeps_p0: bool
    moves: tuple[str, ...]


def _bridge(g: Graph, x: int, y: int, hmask: int, budget: int) -> Optional[list[int]]:
    if x == y:
        return [x]
    p = longest_path_between(g, x, y, hmask, budget=budget)
    if p is None:
        p = shortest_path(g, x, y, hmask)
    return None if p is None else list(p)


def _candidate_moves(g: Graph, c: OrientedCycle, hmask: int, budget: int) -> Iterator[tuple[str, OrientedCycle]]:
    """Rotations first, in lexicographic order of the attachment pair, then plain extensions."""
    attach = [w for w in c.vertices if g.adj[w] & hmask]
    attach.sort()
    for u in attach:
        for v in attach:
            if u == v:
                continue
            xs = g.adj[v] & hmask
            ys = g.adj[u] & hmask
            x = min(iter_bits(xs))
            y = min(iter_bits(ys))
            um, vm = c.pred(u), c.pred(v)
            try:
                if um != vm and g.has_edge(um, vm):
                    common = xs & ys
                    if common:
                        yield "c1", rotate_c1(g, c, u, v, min(iter_bits(common)))
                    if x != y:
                        br = _bridge(g, x, y, hmask, budget)
                        if br is not None:
                            yield "c2", rotate_c2(g, RotationConfig.make(c, u, v, br))
                if x != y or len(list(c.walk(u, v))) <= 2:
                    br = _bridge(g, x, y, hmask, budget)
                    if br is not None and len(br) > len(c.walk(u, v)) - 2:
                        yield "c3", rotate_c3(g, c, u, v, br[0], br[-1], br)
                if c.distance(u, v) >= 4:
                    br = _bridge(g, x, y, hmask, budget)
                    if br is not None and len(br) >= 3 and g.has_edge(um, c.pred(v, 3)):
                        yield "c4", rotate_c4(g, RotationConfig.make(c, u, v, br))
                    if br is not None and len(br) >= 5 and g.has_edge(c.pred(u, 3), c.pred(v, 3)):
                        yield "c5", rotate_c5(g, RotationConfig.make(c, u, v, br))
            except RotationError:
                continue
    hs = list(iter_bits(hmask))
    for u in hs:
        v = next((w for w in hs if w != u), None)
        try:
            yield "extend", extend_into_component(g, c, hmask, u, v, check=False)
        except (RotationError, PreconditionError):
            continue


def lemma_long(
    g: Graph,
    c0: OrientedCycle,
    p0: Path,
    ell: int,
    *,
    alpha: int,
    delta: Fraction,
    params: PipelineParams = PipelineParams(),
) -> LongCycle:
    """Grow ``c0`` until the outside is P5-free or the cycle reaches ``ell``.

    Every accepted move strictly lengthens the cycle, keeps it within
    ``ell + n / (delta alpha)``, and either keeps ``p0`` or leaves at least
    ``delta alpha`` non-intersecting span-2 chords.
    """
    if len(c0) > ell:
        raise PreconditionError(f"starting cycle has length {len(c0)} > {ell}")
    if not c0.contains_path(p0):
        raise PreconditionError("starting cycle does not contain p0")
    delta = Fraction(delta)
    cap = ell + Fraction(g.n) / (delta * alpha)
    need_chords = ceil(delta * alpha)
    c, keeps, moves = c0, True, []
    evaluated = 0
    while len(c) < ell:
        outside = components(g, g.vertex_mask & ~c.mask)
        target = next((h for h in outside if has_p5(g, h)), None)
        if target is None:
            break
        keep_move = chord_move = None
        for name, cand in _candidate_moves(g, c, target, params.step_budget):
            evaluated += 1
            if evaluated > params.move_budget:
                break
            if len(cand) <= len(c) or len(cand) > cap:
                continue
            if cand.contains_path(p0):
                keep_move = (name, cand)
                break
            if chord_move is None and len(cand) > alpha and len(max_cycle_span2_packing(g, cand)) >= need_chords:
                chord_move = (name, cand)
        pick = keep_move or chord_move
        if pick is None:
            raise ConstructionStall(
                "no admissible move while the outside still has a P5",
                {"cycle_length": len(c), "target": ell, "moves": moves, "evaluated": evaluated},
            )
        moves.append(pick[0])
        c = pick[1]
        keeps = keep_move is not None
    out = LongCycle(c, c.contains_path(p0), tuple(moves))
    _check_long(g, out, p0, ell, cap, need_chords, params)
    return out


def _check_long(g: Graph, res: LongCycle, p0: Path, ell: int, cap, need_chords: int, params: PipelineParams) -> None:
    c = res.cycle
    problems = []
    if c.validate(g) is not None:
        problems.append("invalid cycle")
    if len(c) > cap:
        problems.append("length bound")
    if len(c) < ell and any(has_p5(g, h) for h in components(g, g.vertex_mask & ~c.mask)):
        problems.append("outside still has a P5")
    if not res.keeps_p0 and len(max_cycle_span2_packing(g, c)) < need_chords:
        problems.append("lost p0 without enough span-2 chords")
    if problems:
        raise InvariantViolation("improvement loop output fails its properties", {"problems": problems, "cycle": list(c)})


# ---------------------------------------------------------------------------
# filling the last few vertices from a P5-free outside


def _tree_part(g: Graph, c: OrientedCycle) -> tuple[int, list[int]]:
    """Union of outside components that are trees, and the other components."""
    f, rest = 0, []
    for h in components(g, g.vertex_mask & ~c.mask):
        if is_forest_mask(g, h):
            f |= h
        else:
            rest.append(h)
    return f, rest


def _leaf_order(g: Graph, f: int, r: int) -> list[tuple[int, Optional[int]]]:
    """``r`` vertices of forest ``f``, each of degree at most one once the earlier ones are gone."""
    out = []
    left = f
    while len(out) < r:
        u = next((w for w in iter_bits(left) if (g.adj[w] & left).bit_count() <= 1), None)
        if u is None:
            raise InvariantViolation("forest without a leaf", {"forest": list(iter_bits(left))})
        nb = g.adj[u] & left
        out.append((u, min(iter_bits(nb)) if nb else None))
        left &= ~(1 << u)
    return out


def _absorb_leaf(g: Graph, c: OrientedCycle, u: int, v: Optional[int]) -> OrientedCycle:
    comp = next(h for h in components(g, g.vertex_mask & ~c.mask) if h >> u & 1)
    out = extend_into_component(g, c, comp, u, v, check=False)
    if out.mask != c.mask | (1 << u):
        raise InvariantViolation("leaf absorption took more than the leaf", {"cycle": list(c), "leaf": u})
    return out


def length3_remainder(
    g: Graph,
    c0: OrientedCycle,
    ell: int,
    params: PipelineParams = PipelineParams(),
    *,
    min_chords: Optional[int] = None,
    trace: Optional[list] = None,
) -> OrientedCycle:
    """Cycle of length exactly ``ell`` from a shorter chord-rich cycle with a P5-free outside."""
    min_chords = params.remainder_chords if min_chords is None else min_chords
    if len(c0) >= ell:
        raise PreconditionError(f"starting cycle has length {len(c0)}, not below {ell}")
    if ell > g.n:
        raise PreconditionError("target longer than the graph")
    outside = components(g, g.vertex_mask & ~c0.mask)
    if any(has_p5(g, h) for h in outside):
        raise PreconditionError("outside of the starting cycle contains a P5")
    have = count_cycle_chords(g, c0)
    if have < min_chords:
        raise PreconditionError(f"starting cycle has {have} non-intersecting short chords, need {min_chords}")
    trace = [] if trace is None else trace

    c = c0
    for i in (1, 2, 3):
        f, rest = _tree_part(g, c)
        if f.bit_count() >= i or len(c) >= ell - f.bit_count() or not rest:
            continue
        c = extend_keeping_forest(g, c, rest[0])
        trace.append(f"tree-extension-{i}")
    f3, _ = _tree_part(g, c)

    if len(c) == ell + 2:
        out = shorten_cycle_by(g, c, 2)
        trace.append("contract-2")
    elif len(c) in (ell + 1, ell + 3):
        if not f3:
            raise InvariantViolation("no tree vertex left to absorb", {"cycle": list(c)})
        (u, v), = _leaf_order(g, f3, 1)
        c4 = _absorb_leaf(g, c, u, v)
        out = shorten_cycle_by(g, c4, len(c4) - ell)
        trace.append(f"leaf-then-contract-{len(c4) - ell}")
    elif len(c) <= ell:
        # grow through the non-tree part while staying at most ell
        grown = True
        while grown and len(c) < ell:
            grown = False
            for h in components(g, g.vertex_mask & ~c.mask & ~f3):
                hs = list(iter_bits(h))
                for u in hs:
                    v = next((w for w in hs if w != u), None)
                    cand = extend_into_component(g, c, h, u, v, check=False)
                    if len(cand) <= ell:
                        c, grown = cand, True
                        trace.append("fill")
                        break
                if grown:
                    break
        r = ell - len(c)
        if r > f3.bit_count():
            raise ConstructionStall("too few tree vertices to finish", {"missing": r, "tree_vertices": f3.bit_count()})
        for u, v in _leaf_order(g, f3, r):
            c = _absorb_leaf(g, c, u, v)
        trace.append(f"leaves-{r}")
        out = c
    else:
        raise InvariantViolation("remainder ladder overshot", {"cycle_length": len(c), "target": ell})
    if out is None:
        raise ConstructionStall("not enough chords left to contract", {"cycle_length": len(c), "target": ell})
    return checked(g, out, ell, "length3_remainder")


# ---------------------------------------------------------------------------
# driver


def upper_window(n: int, alpha: int, ell: int, delta) -> bool:
    return Fraction(n) / (Fraction(delta) * alpha) <= ell <= n


def _upper_core(g: Graph, ell: int, params: PipelineParams, prof: ConditionProfile) -> RangeResult:
    n, alpha = g.n, prof.alpha
    eta = params.eta
    steps: list[str] = []
    k = max(1, min(floor(eta * alpha), ell // 6))
    cp = build_chorded_path(g, k, alpha=alpha, strict=False)
    p0 = cp.path
    steps.append(f"chorded-path k={k}")
    c0 = extend_to_short_cycle(g, cp, ell)
    steps.append(f"short-cycle {len(c0)}")
    long = lemma_long(g, c0, p0, ell, alpha=alpha, delta=eta, params=params)
    c1 = long.cycle
    steps.append(f"long {len(c1)} via {','.join(long.moves) or 'none'}")
    if len(c1) == ell:
        return RangeResult(c1, "upper:long", steps=tuple(steps))
    if len(c1) < ell:
        # a cycle shorter than 36 cannot carry 18 disjoint short chords, so
        # the driver lets the ladder report a chord shortage instead
        out = length3_remainder(g, c1, ell, params, min_chords=0, trace=steps)
        return RangeResult(out, "upper:remainder", steps=tuple(steps))

    if long.keeps_p0:
        rest = cycle_path_between(c1, p0)  # from p0's end back to its start
        if rest is None:
            raise InvariantViolation("p0 vanished from the long cycle", {"cycle": list(c1)})
        p1 = Path(tuple(rest))
        ell2 = ell - p0.length
        allowed = g.vertex_mask & ~p0.interior_mask
        p2 = shorten_to(g, p1, ell2, ell2 + k, alpha, allowed)
        steps.append(f"shortened {p1.length}->{p2.length}")
        k2 = p0.length - (ell - p2.length)
        q = contract_chords(cp, k2)
        out = glue(g, q.vertices, p2.vertices)
        return RangeResult(out, "upper:shorten", steps=tuple(steps))

    # p0 was lost: the long cycle carries many span-2 chords instead
    t = len(c1) - ell
    if n <= eta * eta * alpha * alpha:
        out = shorten_cycle_by(g, c1, t, spans=(2,))
        if out is None:
            raise ConstructionStall("not enough span-2 chords", {"need": t})
        return RangeResult(out, "upper:span2", steps=tuple(steps))
    half = ell // 2
    vs = c1.vertices
    m = len(vs)
    best = None
    for s in range(m):
        seg = Path(tuple(vs[(s + i) % m] for i in range(half + 1)))
        pack = greedy_chord_packing(path_chords(g, seg, (2,)), seg.index)
        if best is None or len(pack) > len(best[1]):
            best = (seg, pack)
    seg, pack = best
    p2 = cycle_path_between(c1, seg)
    p2 = Path(tuple(p2))
    p3 = shorten_to(g, p2, ell - half, ell - half + len(pack), alpha, p2.mask)
    cseg = ChordedPath(seg, tuple(pack))
    q = contract_chords(cseg, seg.length + p3.length - ell)
    out = glue(g, q.vertices, p3.vertices)
    return RangeResult(out, "upper:split", steps=tuple(steps))


def upper_range(
    g: Graph,
    ell: int,
    params: PipelineParams = PipelineParams(),
    *,
    profile: Optional[ConditionProfile] = None,
    allow_fallback: bool = True,
) -> RangeResult:
    """Cycle of length exactly ``ell`` through the long-cycle pipeline."""
    if not 3 <= ell <= g.n:
        raise PreconditionError(f"length {ell} outside [3, {g.n}]")
    prof = profile or compute_profile(g)
    return with_fallback(g, ell, params.dfs_budget, lambda: _upper_core(g, ell, params, prof), allow_fallback)
