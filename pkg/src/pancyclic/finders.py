"""Finders for short cycles, odd anchors, even cycles and Ramsey thresholds.

The short-cycle finder walks the same case ladder for each length 3..7:
first a long path inside one neighbourhood, then a large matching inside one
neighbourhood, then a single triangle together with the maximum independent
sets ``I(v)`` of the neighbourhoods. Every candidate is validated before it is
returned. When no case produces a valid cycle (the counting slack needs large
independence numbers) a bounded depth-first search takes over and the result
is tagged ``fallback``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Iterator, Optional, Sequence

import networkx as nx

from .errors import BudgetExceeded, ConstructionStall, PreconditionError
from .graph import Graph, find_triangle, iter_bits, lowest
from .independence import independence_number, max_independent_mask
from .paths import OrientedCycle, cycle_violation
from .search import DEFAULT_DFS_BUDGET, FOUND, NONE, find_cycle_of_length, find_path_of_length, has_path_on

FALLBACK = "fallback"


@dataclass(frozen=True)
class FoundCycle:
    cycle: OrientedCycle
    route: str

    @property
    def fallback(self) -> bool:
        return self.route == FALLBACK


def max_matching(g: Graph, mask: int) -> list[tuple[int, int]]:
    """A maximum matching of ``g[mask]`` as sorted pairs, in sorted order."""
    h = nx.Graph()
    for u in iter_bits(mask):
        for v in iter_bits(g.adj[u] & mask & ~((2 << u) - 1)):
            h.add_edge(u, v)
    pairs = nx.max_weight_matching(h, maxcardinality=True)
    return sorted(tuple(sorted(e)) for e in pairs)


def bipartite_matching(g: Graph, left: int, right: int) -> list[tuple[int, int]]:
    """Maximum set of disjoint edges ``x y`` with ``x`` in ``left``, ``y`` in ``right``.

    The two sides may overlap; each returned pair is oriented (left, right).
    """
    h = nx.Graph()
    for x in iter_bits(left):
        for y in iter_bits(g.adj[x] & right):
            h.add_edge(x, y)
    out = []
    for a, b in nx.max_weight_matching(h, maxcardinality=True):
        if left >> a & 1 and right >> b & 1:
            out.append((a, b))
        else:
            out.append((b, a))
    return sorted(out)


class _Local:
    """Per-vertex neighbourhood data shared by the case analyses."""

    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self._indep: dict[int, int] = {}
        self._match: dict[int, list[tuple[int, int]]] = {}

    def indep(self, u: int) -> int:
        if u not in self._indep:
            self._indep[u] = max_independent_mask(self.g, self.g.adj[u])
        return self._indep[u]

    def matching(self, u: int) -> list[tuple[int, int]]:
        if u not in self._match:
            self._match[u] = max_matching(self.g, self.g.adj[u])
        return self._match[u]

    def nbhd_path(self, u: int, order: int) -> Optional[tuple[int, ...]]:
        try:
            return has_path_on(self.g, order, self.g.adj[u], budget=self.budget)
        except BudgetExceeded:
            return None


def _bits(*vs: int) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def _cross_edges(g: Graph, sets: Sequence[int], limit: int = 64) -> Iterator[tuple[int, int, int, int]]:
    """Edges ``x y`` with ``x`` in ``sets[i]`` and ``y`` in ``sets[j]``, ``i != j``."""
    count = 0
    for i, si in enumerate(sets):
        others = 0
        for j, sj in enumerate(sets):
            if j != i:
                others |= sj
        for x in iter_bits(si):
            for y in iter_bits(g.adj[x] & others):
                for j, sj in enumerate(sets):
                    if j != i and sj >> y & 1:
                        yield i, j, x, y
                        count += 1
                        if count >= limit:
                            return
                        break


def _cases_3(loc: _Local) -> Iterator[tuple[str, tuple[int, ...]]]:
    tri = find_triangle(loc.g)
    if tri is not None:
        yield "neighbourhood-edge", tri


def _cases_4(loc: _Local) -> Iterator[tuple[str, tuple[int, ...]]]:
    g = loc.g
    for u in range(g.n):
        p = loc.nbhd_path(u, 3)
        if p is not None:
            yield "neighbourhood-path", (u,) + p
            return
    tri = find_triangle(g)
    if tri is None:
        return
    t = _bits(*tri)
    for a, b in permutations(tri, 2):
        c = next(z for z in tri if z not in (a, b))
        common = loc.indep(a) & loc.indep(b) & ~t
        if common:
            yield "common-independent", (a, lowest(common), b, c)
    sets = [loc.indep(v) & ~t for v in tri]
    for i, j, x, y in _cross_edges(g, sets):
        yield "independent-edge", (tri[i], x, y, tri[j])


def _matching_cases(loc: _Local, size: int, ell: int) -> Iterator[tuple[str, tuple[int, ...]]]:
    g = loc.g
    for u in range(g.n):
        if g.degree(u) < 2 * size:
            continue
        m = loc.matching(u)
        if len(m) < size:
            continue
        m = m[:size]
        s = _bits(u, *(v for e in m for v in e))
        vs = [e[0] for e in m]
        ws = [e[1] for e in m]
        if ell == 5:
            for i, j in permutations(range(size), 2):
                common = loc.indep(vs[i]) & loc.indep(vs[j]) & ~s
                if common:
                    yield "matching-common", (u, vs[i], lowest(common), vs[j], ws[j])
            for i, j, x, y in _cross_edges(g, [loc.indep(v) & ~s for v in vs]):
                yield "matching-edge", (u, vs[i], x, y, vs[j])
        elif ell == 6:
            for i, j in permutations(range(size), 2):
                common = loc.indep(vs[i]) & loc.indep(vs[j]) & ~s
                if common:
                    yield "matching-common", (u, ws[i], vs[i], lowest(common), vs[j], ws[j])
            for i, j, x, y in _cross_edges(g, [loc.indep(v) & ~s for v in vs]):
                yield "matching-edge", (u, vs[i], x, y, vs[j], ws[j])
        else:
            for i, j, x, y in _cross_edges(g, [loc.indep(v) & ~s for v in vs]):
                yield "matching-edge", (u, ws[i], vs[i], x, y, vs[j], ws[j])
            for i, j in permutations(range(size), 2):
                r = _bits(vs[i], vs[j], ws[j], u)
                common = loc.indep(vs[i]) & loc.indep(vs[j]) & ~r
                xs = list(iter_bits(common))[:6]
                for xa, xb in permutations(xs, 2):
                    c2 = loc.indep(xa) & loc.indep(xb) & ~r
                    if c2:
                        yield "matching-common-common", (u, vs[i], xa, lowest(c2), xb, vs[j], ws[j])
                    for a, _, y, z in _cross_edges(g, [loc.indep(xa) & ~r, loc.indep(xb) & ~r], limit=8):
                        if a == 0:
                            yield "matching-common-edge", (u, vs[i], xa, y, z, xb, vs[j])
        return


def _cases_5(loc: _Local) -> Iterator[tuple[str, tuple[int, ...]]]:
    g = loc.g
    for u in range(g.n):
        p = loc.nbhd_path(u, 4)
        if p is not None:
            yield "neighbourhood-path", (u,) + p
            return
    yield from _matching_cases(loc, 4, 5)
    tri = find_triangle(g)
    if tri is None:
        return
    t = _bits(*tri)
    sets = [loc.indep(v) & ~t for v in tri]
    for i, j, x, y in _cross_edges(g, sets):
        k = 3 - i - j
        yield "triangle-edge", (tri[i], x, y, tri[j], tri[k])
    for a, b, c in permutations(tri):
        c1 = loc.indep(a) & loc.indep(b) & ~t
        c2 = loc.indep(b) & loc.indep(c) & ~t
        for x in iter_bits(c1):
            rest = c2 & ~(1 << x)
            if rest:
                yield "triangle-common", (a, x, b, lowest(rest), c)
                break


def _cases_6(loc: _Local) -> Iterator[tuple[str, tuple[int, ...]]]:
    g = loc.g
    for u in range(g.n):
        p = loc.nbhd_path(u, 5)
        if p is not None:
            yield "neighbourhood-path", (u,) + p
            return
    yield from _matching_cases(loc, 5, 6)
    tri = find_triangle(g)
    if tri is None:
        return
    v1, v2, v3 = tri
    t = _bits(*tri)
    c12 = loc.indep(v1) & loc.indep(v2) & ~t
    c23 = loc.indep(v2) & loc.indep(v3) & ~t
    c13 = loc.indep(v1) & loc.indep(v3) & ~t
    triple = next(
        ((x, y, lowest(c13 & ~_bits(x, y))) for x in iter_bits(c12) for y in iter_bits(c23 & ~(1 << x)) if c13 & ~_bits(x, y)),
        None,
    )
    if triple is not None:
        x, y, z = triple
        yield "triangle-commons", (v1, x, v2, y, v3, z)
    for a, b in combinations(tri, 2):
        m = bipartite_matching(g, loc.indep(a) & ~t, loc.indep(b) & ~t)
        for (x1, y1), (x2, y2) in combinations(m, 2):
            yield "triangle-matching", (a, x1, y1, b, y2, x2)
            break


def _short_link(g: Graph, a: int, b: int, avoid: int, length: int, budget: int) -> Optional[tuple[int, ...]]:
    res = find_path_of_length(g, a, b, length + 1, budget=budget, allowed=g.vertex_mask & ~avoid)
    return res.vertices if res.status == FOUND else None


def _cases_7(loc: _Local) -> Iterator[tuple[str, tuple[int, ...]]]:
    g = loc.g
    for u in range(g.n):
        p = loc.nbhd_path(u, 6)
        if p is not None:
            yield "neighbourhood-path", (u,) + p
            return
    yield from _matching_cases(loc, 6, 7)
    tri = find_triangle(g)
    if tri is None:
        return
    v1, v2, v3 = tri
    pairs = [(v1, v2, v3), (v2, v3, v1), (v1, v3, v2)]
    for lens in ((3, 3, 3), (3, 3, 2), (3, 2, 3), (2, 3, 3), (3, 2, 2), (2, 3, 2), (2, 2, 3), (2, 2, 2)):
        used = 0
        links = []
        for (a, b, c), ln in zip(pairs, lens):
            p = _short_link(g, a, b, used | (1 << c), ln, loc.budget)
            if p is None:
                break
            links.append(p)
            used |= _bits(*p[1:-1])
        else:
            p12, p23, p13 = links
            n3 = sum(1 for p in links if len(p) == 4)
            if n3 >= 2:
                if len(p12) == 4 and len(p23) == 4:
                    yield "triangle-links", p12 + p23[1:]
                elif len(p23) == 4 and len(p13) == 4:
                    yield "triangle-links", p23 + tuple(reversed(p13))[1:]
                else:
                    yield "triangle-links", tuple(reversed(p13)) + p12[1:]
            elif n3 == 1:
                yield "triangle-links", p12 + p23[1:] + tuple(reversed(p13))[1:-1]
            else:
                u1, u2, u3 = p12[1], p23[1], p13[1]
                for a, mid, rest in ((v1, u1, (v2, u2, v3, u3)), (v2, u2, (v3, u3, v1, u1)), (v3, u3, (v1, u1, v2, u2))):
                    avoid = _bits(*rest)
                    q = _short_link(g, a, mid, avoid, 2, loc.budget)
                    if q is not None:
                        yield "six-cycle-detour", q + rest
                    q = _short_link(g, a, mid, avoid, 3, loc.budget)
                    if q is not None:
                        yield "six-cycle-detour", q + rest[:3]
            return


_CASES = {3: _cases_3, 4: _cases_4, 5: _cases_5, 6: _cases_6, 7: _cases_7}


def find_short_cycle(
    g: Graph,
    ell: int,
    *,
    alpha: Optional[int] = None,
    budget: int = DEFAULT_DFS_BUDGET,
    check: bool = True,
    allow_fallback: bool = True,
) -> FoundCycle:
    """A cycle of length ``ell`` in 3..7 in a graph with min degree > alpha."""
    if ell not in _CASES:
        raise PreconditionError(f"length {ell} outside 3..7")
    if check:
        if alpha is None:
            alpha = independence_number(g)
        if g.min_degree() <= alpha:
            raise PreconditionError(
                f"minimum degree {g.min_degree()} does not exceed alpha={alpha}",
                {"min_degree": g.min_degree(), "alpha": alpha},
            )
    loc = _Local(g, min(budget, 20_000))
    for case, seq in _CASES[ell](loc):
        if len(seq) == ell and cycle_violation(g, seq) is None:
            return FoundCycle(OrientedCycle(tuple(seq)), f"lemma:{case}")
    if not allow_fallback:
        raise ConstructionStall(f"no case of the ladder produced a {ell}-cycle", {"ell": ell})
    res = find_cycle_of_length(g, ell, budget=budget)
    if res.status == FOUND:
        return FoundCycle(OrientedCycle(res.vertices), FALLBACK)
    if res.status == NONE:
        raise ConstructionStall(f"graph has no {ell}-cycle", {"ell": ell, "exhaustive": True, "n": g.n})
    raise BudgetExceeded(f"search for a {ell}-cycle ran out of budget", {"ell": ell, "nodes": res.nodes})


# --- odd anchors -------------------------------------------------------------


@dataclass(frozen=True)
class OddAnchorSubgraph:
    vertices: frozenset[int]
    host_edges: tuple[tuple[int, int], ...]
    anchors: dict[tuple[int, int], tuple[int, ...]] = field(hash=False)
    family_size: int = 0
    samples: int = 0

    def split(self, length: int) -> list[tuple[int, int]]:
        """Host edges whose anchor cycle has the given length (3 or 5)."""
        return [e for e in self.host_edges if len(self.anchors[e]) == length]

    def violations(self, g: Graph) -> list[str]:
        out = []
        for e in self.host_edges:
            c = self.anchors.get(e)
            if c is None:
                out.append(f"{e}: no anchor")
                continue
            if len(c) not in (3, 5):
                out.append(f"{e}: anchor length {len(c)}")
            if cycle_violation(g, c) is not None:
                out.append(f"{e}: anchor is not a cycle")
            if not (set(e) <= set(c)):
                out.append(f"{e}: anchor misses an end")
            else:
                i, j = c.index(e[0]), c.index(e[1])
                if (i - j) % len(c) not in (1, len(c) - 1):
                    out.append(f"{e}: edge not on anchor")
            if set(c) & self.vertices != set(e):
                out.append(f"{e}: anchor meets the host outside the edge")
        return out


def _odd_family(g: Graph, alpha: int) -> list[tuple[int, ...]]:
    adj = g.adj
    third = alpha / 12
    match = {u: max_matching(g, adj[u]) for u in range(g.n)}
    covered = {u: _bits(*(v for e in match[u] for v in e)) for u in range(g.n)}
    indep = {u: adj[u] & ~covered[u] for u in range(g.n)}
    u1 = {u for u in range(g.n) if len(match[u]) >= third}
    u1_mask = _bits(*u1)

    def triangle_partner(u: int) -> Optional[tuple[int, int]]:
        for v in iter_bits(adj[u] & ~u1_mask):
            w = adj[u] & adj[v]
            if w:
                return v, lowest(w)
        return None

    def remote_triangle(u: int) -> Optional[tuple[int, int, int]]:
        for w in iter_bits(adj[u]):
            for v in iter_bits(adj[w] & ~u1_mask & ~(1 << u)):
                x = adj[v] & adj[w] & ~(1 << u)
                if x:
                    return v, w, lowest(x)
        return None

    fam: list[tuple[int, ...]] = []
    for u in range(g.n):
        if u in u1:
            for x, y in match[u]:
                fam.append((u, x, y))
                fam.append((u, y, x))
            continue
        tp = triangle_partner(u)
        if tp is not None:
            v, w = tp
            common = indep[u] & indep[v]
            if common.bit_count() >= third:
                fam += [(u, x, v) for x in iter_bits(common)]
            else:
                fam += [(u, x, y, v, w) for x, y in bipartite_matching(g, indep[u], indep[v])]
            continue
        rt = remote_triangle(u)
        if rt is not None:
            v, w, x = rt
            common = indep[u] & indep[v]
            if common.bit_count() >= third:
                fam += [(u, y, v, x, w) for y in iter_bits(common)]
            else:
                fam += [(u, y, z, v, w) for y, z in bipartite_matching(g, indep[u], indep[v])]
    # keep well-formed cycles only, and one tuple per ordered leading pair
    seen = set()
    out = []
    for t in fam:
        if len(set(t)) != len(t) or cycle_violation(g, t) is not None or t[:2] in seen:
            continue
        seen.add(t[:2])
        out.append(t)
    return out


def odd_anchor_subgraph(
    g: Graph, seed: int, *, alpha: Optional[int] = None, max_samples: int = 64, check: bool = True
) -> OddAnchorSubgraph:
    """Random vertex half ``X`` and the family edges inside it with anchors outside it."""
    if alpha is None:
        alpha = independence_number(g)
    if check and g.min_degree() <= alpha:
        raise PreconditionError(
            f"minimum degree {g.min_degree()} does not exceed alpha={alpha}",
            {"min_degree": g.min_degree(), "alpha": alpha},
        )
    fam = _odd_family(g, alpha)
    target = max(1, math.ceil(len(fam) / 32)) if fam else 0
    rng = random.Random(seed)
    for sample in range(1, max_samples + 1):
        x = {v for v in range(g.n) if rng.random() < 0.5}
        pairs = {}
        for t in fam:
            if t[0] in x and t[1] in x and not any(v in x for v in t[2:]):
                pairs.setdefault(t[:2], t)
        if len(pairs) >= target:
            anchors: dict[tuple[int, int], tuple[int, ...]] = {}
            for (a, b), t in sorted(pairs.items()):
                anchors.setdefault((min(a, b), max(a, b)), t)
            return OddAnchorSubgraph(frozenset(x), tuple(sorted(anchors)), anchors, len(fam), sample)
    raise BudgetExceeded(
        "no vertex sample kept enough anchored pairs",
        {"family": len(fam), "target": target, "samples": max_samples},
    )


# --- Ramsey and Turan thresholds ---------------------------------------------


def _root(s: int, x: int) -> float:
    r = round(s ** (1 / x))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**x == s:
            return float(c)
    return s ** (1 / x)


def ramsey_bound_erdos(ell: int, s: int) -> int:
    """Upper bound on r(C_ell, K_s) for ell >= 3, s >= 2."""
    if ell < 3 or s < 2:
        raise PreconditionError("need ell >= 3 and s >= 2")
    x = (ell - 1) // 2
    return math.ceil(((ell - 2) * (_root(s, x) + 2) + 1) * (s - 1) - 1e-9)


def ramsey_bound_keevash(ell: int, s: int) -> int:
    """The exact value ``(ell - 1)(s - 1) + 1``, valid when :func:`keevash_in_regime`."""
    if ell < 1 or s < 1:
        raise PreconditionError("need positive ell and s")
    return (ell - 1) * (s - 1) + 1


def keevash_in_regime(ell: int, s: int, c: float = 1.0) -> bool:
    """Whether the linear formula is known to hold, taking the constant as ``c``."""
    if s < 3:
        return False
    return ell >= c * math.log(s) / math.log(math.log(s))


def even_cycle_threshold(ell: int, n: int) -> int:
    """Edge count forcing a cycle of length ``2 ell`` on ``n`` vertices."""
    if ell < 1:
        raise PreconditionError("need ell >= 1")
    return math.ceil(max(20 * ell * n * _root(n, ell), 200 * n * ell) - 1e-9)


@dataclass(frozen=True)
class CycleOrIndependent:
    kind: str  # "cycle", "independent" or "neither"
    cycle: Optional[OrientedCycle] = None
    independent: Optional[frozenset[int]] = None


def find_cycle_or_independent_set(
    g: Graph, ell: int, s: int, budget: int = DEFAULT_DFS_BUDGET
) -> CycleOrIndependent:
    res = find_cycle_of_length(g, ell, budget=budget)
    if res.status == FOUND:
        return CycleOrIndependent("cycle", OrientedCycle(res.vertices))
    mask = max_independent_mask(g, g.vertex_mask)
    if mask.bit_count() >= s:
        pick = list(iter_bits(mask))[:s]
        return CycleOrIndependent("independent", independent=frozenset(pick))
    if res.status != NONE:
        raise BudgetExceeded(f"cycle search for length {ell} ran out of budget", {"nodes": res.nodes})
    return CycleOrIndependent("neither")


def find_even_cycle(g: Graph, two_ell: int, budget: int = DEFAULT_DFS_BUDGET) -> Optional[OrientedCycle]:
    """A cycle of length ``two_ell``, searching edges in decreasing degree-sum order.

    Returns None when the search completes without one; raises
    :class:`BudgetExceeded` when it does not complete.
    """
    if two_ell < 4 or two_ell % 2:
        raise PreconditionError("length must be even and at least 4")
    edges = sorted(g.edges(), key=lambda e: (-(g.degree(e[0]) + g.degree(e[1])), e))
    spent = 0
    for u, v in edges:
        # the path must avoid u until its last step, so the edge u v closes it
        res = find_path_of_length(g, v, u, two_ell, budget=max(1, budget - spent))
        spent += res.nodes
        if res.status == FOUND:
            return OrientedCycle(res.vertices)
        if res.status != NONE:
            raise BudgetExceeded(f"even cycle search for length {two_ell} ran out of budget", {"nodes": spent})
    return None
