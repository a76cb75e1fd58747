"""Cycle rewirings that absorb an outside path, and the Hamilton finder built on them.

Five constructions are supported. With ``C`` oriented, ``u, v`` on ``C``,
``x`` adjacent to ``v`` and ``y`` adjacent to ``u`` off the cycle, and a
bridge path ``P`` from ``x`` to ``y`` outside ``C``:

* c1: ``(u C[u->v^-] v^- u^- C[u^-<-v] v x u)``, needs the edge ``u^- v^-``
* c2: same shape with ``x P y`` in place of ``x``
* c3: ``(v C[v->u] u y P x v)``, dropping the interior of the arc ``C[u->v]``
* c4: ``(u C[u->v^-3] v^-3 u^- C[u^-<-v] v x P y u)``, needs ``u^- v^-3``
* c5: ``(u C[u->v^-3] v^-3 u^-3 C[u^-3<-v] v x P y u)``, needs ``u^-3 v^-3``

Failures raise :class:`RotationError` with a report, because callers probe
many configurations and need to know why one did not apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ConstructionStall, HypothesisViolation, InvariantViolation, PreconditionError, RotationError
from .graph import Graph, components, find_edge_in_mask, find_triangle, iter_bits, lowest, reach_mask, shortest_path
from .connectivity import disjoint_paths_mask
from .paths import BACKWARD, FORWARD, OrientedCycle, Path, cycle_violation

# ---------------------------------------------------------------------------
# the five constructions


@dataclass(frozen=True)
class RotationConfig:
    cycle: OrientedCycle
    u: int
    v: int
    x: int
    y: int
    bridge: Path

    @classmethod
    def make(cls, cycle: OrientedCycle, u: int, v: int, bridge: Sequence[int]) -> "RotationConfig":
        p = bridge if isinstance(bridge, Path) else Path(tuple(bridge))
        return cls(cycle, u, v, p.start, p.end, p)


def _fail(kind: str, **details) -> RotationError:
    return RotationError(f"rotation precondition failed: {kind}", {"failure": kind, **details})


def _check_common(g: Graph, c: OrientedCycle, u: int, v: int) -> None:
    if u not in c or v not in c:
        raise _fail("vertex-not-on-cycle", u=u, v=v)
    if u == v:
        raise _fail("u-equals-v", u=u)


def _check_bridge(g: Graph, c: OrientedCycle, u: int, v: int, x: int, y: int, bridge: Path) -> None:
    if bridge.start != x or bridge.end != y:
        raise _fail("bridge-ends", x=x, y=y, bridge=list(bridge))
    hit = bridge.mask & c.mask
    if hit:
        raise _fail("bridge-touches-cycle", vertices=sorted(iter_bits(hit)))
    bad = bridge.validate(g)
    if bad is not None:
        raise _fail("bridge-not-a-path", violation=str(bad))
    if not g.has_edge(v, x):
        raise _fail("missing-edge", edge=(v, x))
    if not g.has_edge(u, y):
        raise _fail("missing-edge", edge=(u, y))


def _finish(g: Graph, seq: list[int], expected: int, name: str, before: int, strict: bool) -> OrientedCycle:
    bad = cycle_violation(g, seq)
    if bad is not None or len(seq) != expected:
        raise InvariantViolation(
            f"{name} produced an invalid cycle",
            {"sequence": seq, "violation": str(bad), "expected_length": expected},
        )
    if strict and len(seq) <= before:
        raise _fail("non-extending", construction=name, old=before, new=len(seq))
    return OrientedCycle(tuple(seq))


def rotate_c1(g: Graph, cycle: OrientedCycle, u: int, v: int, x: int, *, strict: bool = False) -> OrientedCycle:
    _check_common(g, cycle, u, v)
    if x in cycle:
        raise _fail("x-on-cycle", x=x)
    if not (g.has_edge(x, u) and g.has_edge(x, v)):
        raise _fail("missing-edge", edge=(x, u) if not g.has_edge(x, u) else (x, v))
    um, vm = cycle.pred(u), cycle.pred(v)
    if not g.has_edge(um, vm):
        raise _fail("missing-edge", edge=(um, vm))
    seq = cycle.walk(u, vm, FORWARD) + cycle.walk(um, v, BACKWARD) + [x]
    return _finish(g, seq, len(cycle) + 1, "c1", len(cycle), strict)


def rotate_c2(g: Graph, cfg: RotationConfig, *, strict: bool = False) -> OrientedCycle:
    c, u, v = cfg.cycle, cfg.u, cfg.v
    _check_common(g, c, u, v)
    _check_bridge(g, c, u, v, cfg.x, cfg.y, cfg.bridge)
    um, vm = c.pred(u), c.pred(v)
    if not g.has_edge(um, vm):
        raise _fail("missing-edge", edge=(um, vm))
    seq = c.walk(u, vm, FORWARD) + c.walk(um, v, BACKWARD) + list(cfg.bridge)
    return _finish(g, seq, len(c) + len(cfg.bridge), "c2", len(c), strict)


def rotate_c3(
    g: Graph, cycle: OrientedCycle, u: int, v: int, x: int, y: int, bridge, *, strict: bool = False
) -> OrientedCycle:
    _check_common(g, cycle, u, v)
    p = bridge if isinstance(bridge, Path) else Path(tuple(bridge))
    _check_bridge(g, cycle, u, v, x, y, p)
    dropped = cycle.forward_distance(u, v) - 1
    seq = cycle.walk(v, u, FORWARD) + list(reversed(p.vertices))
    return _finish(g, seq, len(cycle) - dropped + len(p), "c3", len(cycle), strict)


def _check_far(c: OrientedCycle, u: int, v: int) -> None:
    if c.distance(u, v) < 4:
        raise _fail("too-close", u=u, v=v, distance=c.distance(u, v))


def rotate_c4(g: Graph, cfg: RotationConfig, *, strict: bool = False) -> OrientedCycle:
    c, u, v = cfg.cycle, cfg.u, cfg.v
    _check_common(g, c, u, v)
    _check_far(c, u, v)
    _check_bridge(g, c, u, v, cfg.x, cfg.y, cfg.bridge)
    um, v3 = c.pred(u), c.pred(v, 3)
    if not g.has_edge(um, v3):
        raise _fail("missing-edge", edge=(um, v3))
    seq = c.walk(u, v3, FORWARD) + c.walk(um, v, BACKWARD) + list(cfg.bridge)
    return _finish(g, seq, len(c) - 2 + len(cfg.bridge), "c4", len(c), strict)


def rotate_c5(g: Graph, cfg: RotationConfig, *, strict: bool = False) -> OrientedCycle:
    c, u, v = cfg.cycle, cfg.u, cfg.v
    _check_common(g, c, u, v)
    _check_far(c, u, v)
    _check_bridge(g, c, u, v, cfg.x, cfg.y, cfg.bridge)
    u3, v3 = c.pred(u, 3), c.pred(v, 3)
    if not g.has_edge(u3, v3):
        raise _fail("missing-edge", edge=(u3, v3))
    seq = c.walk(u, v3, FORWARD) + c.walk(u3, v, BACKWARD) + list(cfg.bridge)
    return _finish(g, seq, len(c) - 4 + len(cfg.bridge), "c5", len(c), strict)


# ---------------------------------------------------------------------------
# extension into a component


@dataclass(frozen=True)
class Extension:
    cycle: OrientedCycle
    branch: str  # "ear" or "fan"
    removed_edges: int


def _component_check(g: Graph, cycle: OrientedCycle, hmask: int) -> None:
    outside = g.vertex_mask & ~cycle.mask
    if hmask & ~outside or hmask == 0:
        raise PreconditionError("component must be a nonempty set of vertices off the cycle")
    if reach_mask(g.adj, hmask & -hmask, outside) != hmask:
        raise PreconditionError("vertex set is not a connected component of the graph minus the cycle")


def extend_into_component(
    g: Graph, cycle: OrientedCycle, h, u: int, v: Optional[int] = None, *, check: bool = True
) -> OrientedCycle:
    """Absorb a path of ``h`` through ``u`` (avoiding ``v``) into the cycle."""
    return extend_into_component_ex(g, cycle, h, u, v, check=check).cycle


def extend_into_component_ex(
    g: Graph, cycle: OrientedCycle, h, u: int, v: Optional[int] = None, *, check: bool = True
) -> Extension:
    hmask = h if isinstance(h, int) else sum(1 << w for w in set(h))
    if check:
        _component_check(g, cycle, hmask)
    if not hmask >> u & 1:
        raise PreconditionError(f"u={u} is not in the component")
    if v is not None:
        if v == u:
            raise PreconditionError("u and v must be distinct")
        if not hmask >> v & 1:
            raise PreconditionError(f"v={v} is not in the component")
    avoid = 0 if v is None else 1 << v
    inner = hmask & ~avoid  # where bridge interiors may run

    # ear branch: w^- and w joined through u with interior inside h - v
    for w in cycle.vertices:
        wm = cycle.pred(w)
        fan = disjoint_paths_mask(g, 1 << u, (1 << w) | (1 << wm), 2, inner | (1 << w) | (1 << wm))
        if len(fan) == 2:
            p_w = next(p for p in fan.paths if p[-1] == w)
            p_wm = next(p for p in fan.paths if p[-1] == wm)
            # w -> ... -> w^-, back along p_wm to u, then along p_w to w
            seq =cycle.walk(w, wm, FORWARD) + list(reversed(p_wm[:-1])) + list(p_w[1:-1])
            out = _finish(g, seq, len(seq), "ear", len(cycle), True)
            return Extension(out, "ear", 1)

    # fan branch: a large fan from u to the cycle, then an edge among the w_i^-
    fan = disjoint_paths_mask(g, 1 << u, cycle.mask, len(cycle), inner | cycle.mask)
    ends = [p[-1] for p in fan.paths]
    by_end = {p[-1]: p for p in fan.paths}
    preds = {cycle.pred(w): w for w in ends}
    s = (1 << u)
    for wm in preds:
        s |= 1 << wm
    e = find_edge_in_mask(g, s)
    if e is None:
        raise HypothesisViolation(
            "no edge among the fan predecessors and u: kappa > alpha fails",
            witness=frozenset(iter_bits(s)),
            report={"fan_size": len(fan), "cycle_length": len(cycle)},
        )
    a, b = e
    if a == u or b == u:
        raise InvariantViolation(
            "ear branch missed an ear", {"cycle": list(cycle), "u": u, "edge": e, "fan": [list(p) for p in fan.paths]}
        )
    wi, wj = preds[a], preds[b]
    pi, pj = by_end[wi], by_end[wj]
    # (u P_i w_i C[w_i -> w_j^-] w_j^- w_i^- C[w_i^- <- w_j] w_j P_j u)
    seq = list(pi[:-1]) + cycle.walk(wi, cycle.pred(wj), FORWARD) + cycle.walk(cycle.pred(wi), wj, BACKWARD) + list(reversed(pj[1:-1]))
    out = _finish(g, seq, len(seq), "fan", len(cycle), True)
    return Extension(out, "fan", 2)


# ---------------------------------------------------------------------------
# constructive Chvatal-Erdos


def shortest_cycle(g: Graph, allowed: Optional[int] = None) -> Optional[OrientedCycle]:
    """A triangle if there is one, else a shortest cycle (least root first)."""
    allowed = g.vertex_mask if allowed is None else allowed
    t = find_triangle(g, allowed)
    if t is not None:
        return OrientedCycle(t)
    best: Optional[list[int]] = None
    for r in iter_bits(allowed):
        parent = {r: -1}
        depth = {r: 0}
        frontier = [r]
        found = None
        while frontier and found is None:
            nxt = []
            for a in frontier:
                for b in iter_bits(g.adj[a] & allowed):
                    if b == parent[a]:
                        continue
                    if b in depth:
                        # non-tree edge: check the two tree paths meet only at r
                        pa, pb = [a], [b]
                        while parent[pa[-1]] != -1:
                            pa.append(parent[pa[-1]])
                        while parent[pb[-1]] != -1:
                            pb.append(parent[pb[-1]])
                        if set(pa[:-1]).isdisjoint(pb[:-1]):
                            found = list(reversed(pa)) + pb[:-1]
                            break
                        continue
                    parent[b] = a
                    depth[b] = depth[a] + 1
                    nxt.append(b)
                if found is not None:
                    break
            frontier = nxt
        if found is not None and (best is None or len(found) < len(best)):
            best = found
            if len(best) == 4:
                break
    return None if best is None else OrientedCycle(tuple(best))


def _ce_step(g: Graph, c: OrientedCycle) -> OrientedCycle:
    outside = g.vertex_mask & ~c.mask
    comp = components(g, outside)[0]
    attach = 0
    for w in c.vertices:
        if g.adj[w] & comp:
            attach |= 1 << w
    # two consecutive attachment points: insert a path of the component
    for w in c.vertices:
        wm = c.pred(w)
        if attach >> w & 1 and attach >> wm & 1:
            a = lowest(g.adj[w] & comp)
            b = lowest(g.adj[wm] & comp)
            p = shortest_path(g, a, b, comp)
            seq = c.walk(w, wm, FORWARD) + list(reversed(p))
            return _finish(g, seq, len(c) + len(p), "insert", len(c), True)
    h = lowest(comp)
    s = 1 << h
    pred_of = {}
    for w in iter_bits(attach):
        wm = c.pred(w)
        pred_of[wm] = w
        s |= 1 << wm
    e = find_edge_in_mask(g, s)
    if e is None:
        raise HypothesisViolation(
            "attachment predecessors plus a component vertex are independent",
            witness=frozenset(iter_bits(s)),
        )
    if h in e:
        raise InvariantViolation("component vertex adjacent to a predecessor", {"cycle": list(c), "edge": e})
    u, v = pred_of[e[0]], pred_of[e[1]]
    x = lowest(g.adj[v] & comp)
    y = lowest(g.adj[u] & comp)
    p = shortest_path(g, x, y, comp)
    if x == y:
        return rotate_c1(g, c, u, v, x, strict=True)
    return rotate_c2(g, RotationConfig.make(c, u, v, p), strict=True)


def ce_hamilton_steps(g: Graph, *, profile=None, check: bool = True) -> list[OrientedCycle]:
    """Every cycle visited on the way to a Hamilton cycle, bootstrap first."""
    if g.n < 3:
        raise PreconditionError("need at least 3 vertices")
    if check:
        if profile is None:
            from .profile import profile as compute_profile

            profile = compute_profile(g)
        if profile.kappa < profile.alpha:
            raise PreconditionError(
                f"kappa={profile.kappa} < alpha={profile.alpha}", {"alpha": profile.alpha, "kappa": profile.kappa}
            )
    c = shortest_cycle(g)
    if c is None:
        raise PreconditionError("graph is acyclic")
    steps = [c]
    while len(c) < g.n:
        try:
            nxt = _ce_step(g, c)
        except (RotationError, HypothesisViolation) as exc:
            raise InvariantViolation(
                "Hamilton extension stalled under kappa >= alpha",
                {"cycle": list(c), "graph_edges": list(g.edges()), "cause": str(exc), "detail": exc.report},
            ) from exc
        if len(nxt) <= len(c):
            raise InvariantViolation("extension did not grow the cycle", {"cycle": list(c), "next": list(nxt)})
        c = nxt
        steps.append(c)
    return steps


def ce_hamilton(g: Graph, *, profile=None, check: bool = True) -> OrientedCycle:
    """Hamilton cycle of a graph with kappa >= alpha, built by rotations."""
    return ce_hamilton_steps(g, profile=profile, check=check)[-1]
