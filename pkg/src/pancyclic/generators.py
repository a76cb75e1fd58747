"""Seeded instance generators for tests, lemma runners and the hunt."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .errors import BudgetExceeded, PreconditionError
from .graph import Graph
from .paths import OrientedCycle, Path
from .profile import ConditionProfile, profile
from .rotation import RotationConfig

TARGETS = ("kappa>alpha", "mindeg>alpha", "kappa>=alpha")


def gnp(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def _meets(target: str, prof: ConditionProfile) -> bool:
    if target == "kappa>alpha":
        return prof.kappa > prof.alpha
    if target == "mindeg>alpha":
        return prof.min_degree > prof.alpha
    if target == "kappa>=alpha":
        return prof.kappa >= prof.alpha
    raise PreconditionError(f"unknown target {target!r}; expected one of {TARGETS}")


def random_condition_graph(
    n: int,
    target: str,
    seed: int,
    *,
    p_start: float = 0.15,
    p_step: float = 0.05,
    p_max: float = 0.95,
    tries_per_p: int = 4,
) -> tuple[Graph, ConditionProfile]:
    """Dense G(n, p) sample whose exact profile meets ``target``.

    ``p`` starts low and rises by ``p_step`` after ``tries_per_p`` rejections,
    so accepted graphs sit near the sparsest density that works.
    """
    if target not in TARGETS:
        raise PreconditionError(f"unknown target {target!r}; expected one of {TARGETS}")
    if n < 2:
        raise PreconditionError("need at least 2 vertices")
    rng = random.Random(seed)
    p = p_start
    attempts = 0
    while p <= p_max + 1e-9:
        for _ in range(tries_per_p):
            attempts += 1
            g = gnp(n, p, rng)
            # minimum degree bounds kappa, so skip hopeless samples cheaply
            if g.min_degree() == 0:
                continue
            prof = profile(g)
            if _meets(target, prof):
                return g, prof
        p += p_step
    raise BudgetExceeded(
        f"no {target} graph on {n} vertices up to p={p_max}",
        {"n": n, "target": target, "attempts": attempts, "p_max": p_max},
    )


def relabel(g: Graph, perm: list[int]) -> Graph:
    return Graph.from_edges(g.n, [(perm[u], perm[v]) for u, v in g.edges()])


@dataclass(frozen=True)
class RotationInstance:
    kind: str
    graph: Graph
    cfg: RotationConfig
    expected_length: int
    expected_vertices: frozenset[int]


def random_rotation_instance(kind: str, rng: random.Random, noise: float = 0.1) -> RotationInstance:
    """A valid configuration for construction ``kind`` in a random host graph.

    The cycle, bridge and required edges are planted; ``noise`` adds random
    extra edges, which never invalidate a configuration.
    """
    if kind not in ("c1", "c2", "c3", "c4", "c5"):
        raise PreconditionError(f"unknown construction {kind!r}")
    m = rng.randint(10 if kind in ("c4", "c5") else 4, 18)
    blen = 1 if kind == "c1" else rng.randint(1, 7)
    extra = rng.randint(0, 4)
    n = m + blen + extra
    perm = list(range(n))
    rng.shuffle(perm)
    cyc = perm[:m]
    bridge = perm[m : m + blen]
    edges = {frozenset((cyc[i], cyc[(i + 1) % m])) for i in range(m)}
    edges |= {frozenset((bridge[i], bridge[i + 1])) for i in range(blen - 1)}
    if rng.random() < 0.5:
        cyc = cyc[::-1]
    c = OrientedCycle(tuple(cyc))

    def pick_pair() -> tuple[int, int]:
        while True:
            u, v = rng.sample(cyc, 2)
            if kind in ("c4", "c5") and c.distance(u, v) < 4:
                continue
            if kind in ("c1", "c2") and c.pred(u) == c.pred(v):
                continue
            return u, v

    u, v = pick_pair()
    x, y = bridge[0], bridge[-1]
    edges.add(frozenset((v, x)))
    edges.add(frozenset((u, y)))
    if kind in ("c1", "c2"):
        need = (c.pred(u), c.pred(v))
    elif kind == "c4":
        need = (c.pred(u), c.pred(v, 3))
    elif kind == "c5":
        need = (c.pred(u, 3), c.pred(v, 3))
    else:
        need = None
    if need is not None and need[0] != need[1]:
        edges.add(frozenset(need))
    # noise, keeping bridge interiors away from the cycle so the config stays valid
    protected = set(bridge)
    for a, b in combinations(range(n), 2):
        if rng.random() < noise and not ({a, b} & protected and {a, b} & set(cyc)):
            edges.add(frozenset((a, b)))
    g = Graph.from_edges(n, [tuple(e) for e in edges])
    cfg = RotationConfig.make(c, u, v, bridge)
    p = len(bridge)
    if kind == "c1":
        exp = m + 1
        verts = set(cyc) | {x}
    elif kind == "c2":
        exp = m + p
        verts = set(cyc) | set(bridge)
    elif kind == "c3":
        dropped = c.walk(u, v)[1:-1]
        exp = m - len(dropped) + p
        verts = (set(cyc) - set(dropped)) | set(bridge)
    elif kind == "c4":
        exp = m - 2 + p
        verts = (set(cyc) - {c.pred(v), c.pred(v, 2)}) | set(bridge)
    else:
        exp = m - 4 + p
        verts = (set(cyc) - {c.pred(v), c.pred(v, 2), c.pred(u), c.pred(u, 2)}) | set(bridge)
    return RotationInstance(kind, g, cfg, exp, frozenset(verts))


def apply_rotation(inst: RotationInstance, strict: bool = False) -> OrientedCycle:
    from . import rotation as rot

    cfg, g = inst.cfg, inst.graph
    if inst.kind == "c1":
        return rot.rotate_c1(g, cfg.cycle, cfg.u, cfg.v, cfg.x, strict=strict)
    if inst.kind == "c2":
        return rot.rotate_c2(g, cfg, strict=strict)
    if inst.kind == "c3":
        return rot.rotate_c3(g, cfg.cycle, cfg.u, cfg.v, cfg.x, cfg.y, cfg.bridge, strict=strict)
    if inst.kind == "c4":
        return rot.rotate_c4(g, cfg, strict=strict)
    return rot.rotate_c5(g, cfg, strict=strict)


def clique_chain(sizes: list[int], links: int, rng: Optional[random.Random] = None) -> Graph:
    """Cliques in a ring, consecutive ones joined by ``links`` disjoint edges.

    Independence number is the number of cliques; connectivity grows with
    ``links``, which makes these handy for hitting kappa > alpha at larger n.
    """
    rng = rng or random.Random(0)
    offsets = []
    total = 0
    for s in sizes:
        offsets.append(total)
        total += s
    edges = []
    for off, s in zip(offsets, sizes):
        edges += [(off + i, off + j) for i, j in combinations(range(s), 2)]
    k = len(sizes)
    for i in range(k):
        j = (i + 1) % k
        if k == 2 and i == 1:
            break
        a = rng.sample(range(sizes[i]), min(links, sizes[i]))
        b = rng.sample(range(sizes[j]), min(links, sizes[j]))
        edges += [(offsets[i] + p, offsets[j] + q) for p, q in zip(a, b)]
    return Graph.from_edges(total, edges)
