"""Randomised invariant runners, one per construction.

Each runner draws seeded instances, calls the construction and checks its
output literally.  An invariant failure is a violation; an honest
:class:`ConstructionStall` (the construction gave up without lying) is
counted separately, as are DFS fallbacks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator, Optional

from ..chorded import build_chorded_path, extend_to_short_cycle
from ..errors import BudgetExceeded, ConstructionStall, InvariantViolation, PancyclicError, PreconditionError
from ..finders import find_short_cycle, odd_anchor_subgraph
from ..generators import apply_rotation, clique_chain, random_condition_graph, random_rotation_instance
from ..graph import Graph, components
from ..independence import independence_number
from ..paths import OrientedCycle, Path, contract_chords
from ..pipelines import (
    PipelineParams,
    extend_keeping_forest,
    length3_remainder,
    lemma_long,
    mid_range_extend,
    n_over_alpha_paths,
    p5free_structure,
    route_for,
    shorten_path_indep,
    shorten_path_mindeg,
)
from ..pipelines.common import has_p5, is_forest_mask
from ..pipelines.lower import lower_range
from ..pipelines.middle import middle_range
from ..pipelines.shortening import indep_window, mindeg_window
from ..pipelines.upper import upper_range
from ..profile import profile
from ..rotation import ce_hamilton, ce_hamilton_steps, extend_into_component_ex
from ..search import FOUND, find_cycle_of_length, find_path_of_length
from .oracles import is_cycle

PASS, STALL, VIOLATION, FALLBACK, SKIP = "pass", "stall", "violation", "fallback", "skip"


@dataclass
class LemmaReport:
    name: str
    trials: int
    seed: int
    counts: dict = field(default_factory=lambda: {PASS: 0, STALL: 0, VIOLATION: 0, FALLBACK: 0, SKIP: 0})
    violations: list = field(default_factory=list)
    stalls: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.counts[VIOLATION] == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "counts": dict(self.counts),
            "violations": self.violations[:20],
            "stall_reasons": sorted(set(self.stalls))[:20],
        }


Outcome = tuple[str, str]  # (kind, detail)


def _ok(cond: bool, what: str) -> Outcome:
    return (PASS, "") if cond else (VIOLATION, what)


# --- instance pools -----------------------------------------------------------


def mindeg_instance(rng: random.Random, min_alpha: int = 1, n_max: int = 60, n_min: int = 8) -> tuple[Graph, int]:
    """A graph on ``n_min..n_max`` vertices with verified min degree > alpha >= ``min_alpha``."""
    while True:
        if rng.random() < 0.5:
            parts = rng.randint(max(min_alpha, 2), max(min_alpha, 2) + 3)
            sizes = [rng.randint(parts + 1, parts + 4) for _ in range(parts)]
            if not n_min <= sum(sizes) <= n_max:
                continue
            g = clique_chain(sizes, rng.randint(1, 3), rng)
            extra = [(u, v) for u, v in combinations(range(g.n), 2) if rng.random() < 0.03]
            g = Graph.from_edges(g.n, list(g.edges()) + extra)
        else:
            n = rng.randint(max(n_min, 5 * min_alpha), n_max)
            p = rng.uniform(0.45, 0.8)
            g = Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])
        a = independence_number(g)
        if a >= min_alpha and g.min_degree() > a:
            return g, a


def kappa_instance(rng: random.Random, n_lo: int = 10, n_hi: int = 24):
    return random_condition_graph(rng.randint(n_lo, n_hi), "kappa>alpha", rng.getrandbits(32))


# --- runners ------------------------------------------------------------------


def _chorded(rng: random.Random, contract: bool) -> Outcome:
    g, a = mindeg_instance(rng, 6)
    k = rng.randint(1, a // 6)
    cp = build_chorded_path(g, k, alpha=a)
    p = cp.path
    idx = p.index
    spans = []
    for c in cp.chords:
        i, j = sorted((idx[c.a], idx[c.b]))
        if not g.has_edge(c.a, c.b) or j - i != c.span or c.span not in (2, 3):
            return VIOLATION, f"bad chord {c}"
        spans.append((i, j))
    disjoint = all(j1 <= i2 or j2 <= i1 for (i1, j1), (i2, j2) in combinations(spans, 2))
    ok = p.validate(g) is None and len(cp.chords) == k and p.length <= 3 * k and disjoint
    ok = ok and any(c.span == 2 for c in cp.chords)
    if not ok:
        return VIOLATION, f"postcondition failed for k={k}"
    if contract:
        for kp in range(k + 1):
            q = contract_chords(cp, kp)
            if q.order != p.order - kp or q.ends != p.ends or q.validate(g) is not None:
                return VIOLATION, f"contraction by {kp} failed"
    return PASS, ""


def _rotation(kind: str) -> Callable[[random.Random], Outcome]:
    def run(rng: random.Random) -> Outcome:
        inst = random_rotation_instance(kind, rng)
        out = apply_rotation(inst)
        return _ok(
            is_cycle(inst.graph, out.vertices)
            and len(out) == inst.expected_length
            and set(out) == set(inst.expected_vertices),
            f"{kind}: got length {len(out)}, expected {inst.expected_length}",
        )

    return run


def _cycle_extension(rng: random.Random) -> Outcome:
    g, prof = kappa_instance(rng)
    steps = ce_hamilton_steps(g, profile=prof)
    c = rng.choice(steps[:-1]) if len(steps) > 1 else None
    if c is None:
        return SKIP, "already Hamiltonian"
    comps = components(g, g.vertex_mask & ~c.mask)
    h = rng.choice(comps)
    hs = [v for v in range(g.n) if h >> v & 1]
    u = rng.choice(hs)
    v = rng.choice([w for w in hs if w != u]) if len(hs) > 1 else None
    out = extend_into_component_ex(g, c, h, u, v).cycle
    new = set(out) - set(c)
    return _ok(
        is_cycle(g, out.vertices) and set(c) <= set(out) and u in new and v not in new and new <= set(hs),
        "extension contract",
    )


_SMALL_P5_FREE = [
    [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],  # K4
    [(0, 1), (1, 2), (0, 2), (2, 3)],  # paw
    [(0, 1), (0, 2), (0, 3)],  # star
    [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)],  # diamond
    [(0, 1), (1, 2), (0, 2)],  # triangle
    [(0, 1), (1, 2), (2, 3)],  # P4
    [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)],  # triangle with two pendants on one corner
    [(0, 1)],  # edge
]


def _p5_structure(rng: random.Random) -> Outcome:
    n = rng.randint(1, 7)
    edges = [e for e in combinations(range(n), 2) if rng.random() < 0.5]
    g = Graph.from_edges(n, edges)
    comps = components(g, g.vertex_mask)
    h = max(comps, key=int.bit_count)
    if has_p5(g, h):
        return SKIP, "has a P5"
    st = p5free_structure(g, h)
    return _ok(st.verify(g), f"structure {st.kind} does not verify")


def _planted_p5_free(rng: random.Random) -> tuple[Graph, OrientedCycle, int]:
    m = rng.randint(8, 14)
    gadget = rng.choice(_SMALL_P5_FREE)
    size = 1 + max(max(e) for e in gadget)
    edges = list(combinations(range(m), 2))
    edges += [(m + a, m + b) for a, b in gadget]
    for w in range(m, m + size):
        for v in rng.sample(range(m), rng.randint(size + 1, m)):
            edges.append((v, w))
    g = Graph.from_edges(m + size, edges)
    order = list(range(m))
    rng.shuffle(order)
    hmask = sum(1 << w for w in range(m, m + size))
    return g, OrientedCycle(tuple(order)), hmask


def _tree_extension(rng: random.Random) -> Outcome:
    g, c, h = _planted_p5_free(rng)
    out = extend_keeping_forest(g, c, h)
    rest = h & ~out.mask
    return _ok(
        is_cycle(g, out.vertices) and set(c) <= set(out) and rest != 0 and is_forest_mask(g, rest),
        "forest extension contract",
    )


def _short_cycles(rng: random.Random) -> Outcome:
    g, prof = random_condition_graph(rng.randint(10, 40), "mindeg>alpha", rng.getrandbits(32))
    a = prof.alpha
    ell = rng.randint(3, 7)
    fc = find_short_cycle(g, ell, alpha=a)
    if not (is_cycle(g, fc.cycle.vertices) and len(fc.cycle) == ell):
        return VIOLATION, f"bad {ell}-cycle"
    return (FALLBACK, fc.route) if fc.fallback else (PASS, "")


def _odd_anchor(rng: random.Random) -> Outcome:
    g, a = mindeg_instance(rng, 2, 40)
    h = odd_anchor_subgraph(g, rng.getrandbits(32), alpha=a)
    bad = h.violations(g)
    return _ok(not bad, "; ".join(bad[:3]))


def _mid_range(rng: random.Random) -> Outcome:
    n = rng.randint(30, 60)
    g = Graph.from_edges(n, [e for e in combinations(range(n), 2) if rng.random() < rng.uniform(0.5, 0.9)])
    a = independence_number(g)
    length = rng.randint(3, n // 3)
    s, t = rng.sample(range(n), 2)
    res = find_path_of_length(g, s, t, length, budget=50_000)
    if res.status != FOUND:
        return SKIP, "no starting path"
    p = Path(tuple(res.vertices))
    r = rng.randint(6, 16)
    ext = mid_range_extend(g, p, r, a)
    q = ext.path
    return _ok(
        q.validate(g) is None and q.ends == p.ends and p.length < q.length <= p.length + r,
        f"extension by up to {r}",
    )


def _n_over_alpha(rng: random.Random) -> Outcome:
    g, prof = kappa_instance(rng, 16, 30)
    res = n_over_alpha_paths(g, alpha=prof.alpha, kappa=prof.kappa)
    bad = res.structural_violations(g)
    return _ok(not bad, "; ".join(bad))


def _shortening(rng: random.Random) -> Outcome:
    g, a = mindeg_instance(rng, 1, 40)
    length = rng.randint(3, g.n - 1)
    s, t = rng.sample(range(g.n), 2)
    res = find_path_of_length(g, s, t, length, budget=50_000)
    if res.status != FOUND:
        return SKIP, "no starting path"
    p = Path(tuple(res.vertices))
    if rng.random() < 0.5:
        q, w = shorten_path_mindeg(g, p), mindeg_window(g, p)
    else:
        q, w = shorten_path_indep(g, p, a), indep_window(p, a)
    return _ok(
        q.validate(g) is None and q.ends == p.ends and p.order - w <= q.order < p.order,
        "shortening window",
    )


def _length3_remainder(rng: random.Random) -> Outcome:
    g, prof = kappa_instance(rng, 12, 24)
    drop = rng.randint(1, 4)
    res = find_cycle_of_length(g, g.n - drop, 200_000)
    if res.status != FOUND:
        return SKIP, "no starting cycle"
    c0 = OrientedCycle(res.vertices)
    ell = rng.randint(len(c0) + 1, g.n)
    out = length3_remainder(g, c0, ell, min_chords=0)
    return _ok(is_cycle(g, out.vertices) and len(out) == ell, f"length {len(out)} != {ell}")


def _lemma_long(rng: random.Random) -> Outcome:
    g, prof = kappa_instance(rng, 14, 28)
    cp = build_chorded_path(g, 1, alpha=prof.alpha, strict=False)
    c0 = extend_to_short_cycle(g, cp, g.n)
    ell = rng.randint(len(c0), g.n)
    delta = Fraction(1, 10)
    res = lemma_long(g, c0, cp.path, ell, alpha=prof.alpha, delta=delta)
    c = res.cycle
    outside_ok = len(c) >= ell or all(not has_p5(g, h) for h in components(g, g.vertex_mask & ~c.mask))
    return _ok(is_cycle(g, c.vertices) and len(c) >= len(c0) and outside_ok, "long-cycle contract")


_RANGE_FN = {"lower": lower_range, "middle": middle_range, "upper": upper_range}


def _ranges(rng: random.Random) -> Outcome:
    g, prof = kappa_instance(rng, 12, 30)
    ell = rng.randint(3, g.n)
    params = PipelineParams()
    name, _ = route_for(g.n, prof.alpha, ell, params.delta)
    res = _RANGE_FN[name](g, ell, params, profile=prof)
    if not (is_cycle(g, res.cycle.vertices) and len(res.cycle) == ell):
        return VIOLATION, f"{name} returned a bad {ell}-cycle"
    return (FALLBACK, res.stall or name) if res.fallback else (PASS, "")


def _ce_hamilton(rng: random.Random) -> Outcome:
    g, prof = random_condition_graph(rng.randint(5, 24), "kappa>=alpha", rng.getrandbits(32))
    c = ce_hamilton(g, profile=prof)
    return _ok(is_cycle(g, c.vertices) and len(c) == g.n, "not a Hamilton cycle")


LEMMAS: dict[str, Callable[[random.Random], Outcome]] = {
    "path-chords": lambda rng: _chorded(rng, False),
    "chords-contract": lambda rng: _chorded(rng, True),
    "rotate-c1": _rotation("c1"),
    "rotate-c2": _rotation("c2"),
    "rotate-c3": _rotation("c3"),
    "rotate-c4": _rotation("c4"),
    "rotate-c5": _rotation("c5"),
    "cycle-extension": _cycle_extension,
    "p5-structure": _p5_structure,
    "tree-extension": _tree_extension,
    "short-cycles": _short_cycles,
    "odd-anchor": _odd_anchor,
    "mid-range": _mid_range,
    "n-over-alpha": _n_over_alpha,
    "shortening-windows": _shortening,
    "length3-remainder": _length3_remainder,
    "lemma-long": _lemma_long,
    "ranges": _ranges,
    "ce-hamilton": _ce_hamilton,
}


def lemma_test(name: str, trials: int, seed: int) -> LemmaReport:
    """Run ``trials`` seeded instances of one registered construction."""
    if name not in LEMMAS:
        raise PreconditionError(f"unknown lemma id {name!r}; known: {', '.join(sorted(LEMMAS))}")
    run = LEMMAS[name]
    rep = LemmaReport(name, trials, seed)
    for t in range(trials):
        rng = random.Random(f"{name}:{seed}:{t}")
        try:
            kind, detail = run(rng)
        except InvariantViolation as exc:
            kind, detail = VIOLATION, f"{exc} {exc.report}"
        except (ConstructionStall, BudgetExceeded) as exc:
            kind, detail = STALL, type(exc).__name__ + ": " + str(exc).split(":")[0]
        except PancyclicError as exc:
            # any other library error on a valid instance is a broken contract
            kind, detail = VIOLATION, f"{type(exc).__name__}: {exc}"
        rep.counts[kind] += 1
        if kind == VIOLATION:
            rep.violations.append({"trial": t, "detail": detail})
        elif kind == STALL:
            rep.stalls.append(detail)
    return rep
