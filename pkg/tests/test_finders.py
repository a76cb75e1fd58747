from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import pytest

from conftest import atlas_graphs, brute_alpha, random_graph
from pancyclic.errors import ConstructionStall, PreconditionError
from pancyclic.finders import (
    even_cycle_threshold,
    find_cycle_or_independent_set,
    find_even_cycle,
    find_short_cycle,
    keevash_in_regime,
    odd_anchor_subgraph,
    ramsey_bound_erdos,
    ramsey_bound_keevash,
)
from pancyclic.formats import read_graph6_file
from pancyclic.generators import random_condition_graph
from pancyclic.graph import Graph
from pancyclic.harness.lemmas import mindeg_instance
from pancyclic.harness.oracles import FOUND, NONE, brute_find_cycle, is_cycle

DATA = Path(__file__).parent / "data"


def test_short_cycle_examples():
    k5 = Graph.complete(5)
    assert len(find_short_cycle(k5, 3).cycle) == 3
    assert len(find_short_cycle(k5, 5).cycle) == 5
    g = Graph.complete(12).without_edges([(2 * i, 2 * i + 1) for i in range(6)])
    assert g.min_degree() == 10 and brute_alpha(g) == 2
    fc = find_short_cycle(g, 7)
    assert len(fc.cycle) == 7 and is_cycle(g, fc.cycle.vertices)
    assert brute_find_cycle(g, 7).status == FOUND


def test_short_cycle_preconditions():
    with pytest.raises(PreconditionError):
        find_short_cycle(Graph.cycle(6), 4)
    with pytest.raises(PreconditionError):
        find_short_cycle(Graph.complete(9), 8)


def _small_mindeg_graphs():
    for g in atlas_graphs(7):
        if g.n >= 3 and g.min_degree() > brute_alpha(g):
            yield g
    for g in read_graph6_file(DATA / "graphs8.g6"):
        if g.min_degree() > brute_alpha(g):
            yield g


def test_short_cycle_agrees_with_oracle_up_to_8():
    seen = 0
    for g in _small_mindeg_graphs():
        seen += 1
        for ell in range(3, min(7, g.n) + 1):
            truth = brute_find_cycle(g, ell)
            if truth.status == FOUND:
                fc = find_short_cycle(g, ell)
                assert len(fc.cycle) == ell and is_cycle(g, fc.cycle.vertices)
            else:
                assert truth.status == NONE
                with pytest.raises(ConstructionStall):
                    find_short_cycle(g, ell)
    assert seen > 100


def test_short_cycle_random_dense():
    rng = random.Random(5)
    lemma = 0
    for _ in range(30):
        g, prof = random_condition_graph(rng.randint(10, 40), "mindeg>alpha", rng.getrandbits(32))
        a = prof.alpha
        for ell in range(3, 8):
            fc = find_short_cycle(g, ell, alpha=a)
            assert len(fc.cycle) == ell and is_cycle(g, fc.cycle.vertices)
            lemma += not fc.fallback
    assert lemma > 0


def test_odd_anchor_complete_graph():
    g = Graph.complete(9)
    h = odd_anchor_subgraph(g, seed=1)
    assert h.host_edges
    assert all(len(h.anchors[e]) == 3 for e in h.host_edges)
    assert h.violations(g) == []


def test_odd_anchor_triangle_free():
    g = Graph.complete_bipartite(4, 4)
    with pytest.raises(PreconditionError):
        odd_anchor_subgraph(g, 0)
    try:
        h = odd_anchor_subgraph(g, 0, check=False)
    except Exception as exc:  # honest failure is allowed
        assert type(exc).__name__ in ("BudgetExceeded", "ConstructionStall")
    else:
        assert all(len(h.anchors[e]) == 5 for e in h.host_edges)
        assert h.violations(g) == []


def _literal_anchor_check(g, h):
    for e in h.host_edges:
        c = h.anchors[e]
        assert len(c) in (3, 5)
        assert is_cycle(g, c)
        k = len(c)
        i, j = c.index(e[0]), c.index(e[1])
        assert (i - j) % k in (1, k - 1)
        assert set(c) & set(h.vertices) == set(e)


@pytest.mark.parametrize("seed", range(4))
def test_odd_anchor_random(seed):
    rng = random.Random(100 + seed)
    g, a = mindeg_instance(rng, 3, 80)
    h = odd_anchor_subgraph(g, seed, alpha=a)
    _literal_anchor_check(g, h)
    assert h.violations(g) == []


def _erdos_reference(ell, s):
    # bisect the x-th root with exact rationals instead of floats
    x = (ell - 1) // 2
    r, step = Fraction(0), Fraction(1)
    for _ in range(60):
        while (r + step) ** x <= s:
            r += step
        step /= 2
    val = ((ell - 2) * (r + 2) + 1) * (s - 1)
    if r**x == s:
        return math.ceil(val)
    # irrational root: r sits within 2^-59 below it, too close to cross an integer
    return math.floor(val) + 1


def test_ramsey_erdos_examples():
    assert ramsey_bound_erdos(5, 3) == 25
    assert ramsey_bound_erdos(3, 2) == 5
    for ell in range(3, 12):
        vals = [ramsey_bound_erdos(ell, s) for s in range(2, 40)]
        assert vals == sorted(vals)
    for ell in range(3, 20):
        for s in range(2, 30):
            assert ramsey_bound_erdos(ell, s) == _erdos_reference(ell, s), (ell, s)


def test_ramsey_keevash_examples():
    assert ramsey_bound_keevash(5, 4) == 13
    assert ramsey_bound_keevash(3, 3) == 5
    assert ramsey_bound_keevash(7, 2) == 7
    assert not keevash_in_regime(7, 2)


def test_ramsey_band_ordering():
    for ell in range(3, 51):
        for s in range(3, 51):
            if keevash_in_regime(ell, s):
                assert ramsey_bound_keevash(ell, s) <= ramsey_bound_erdos(ell, s)


def test_cycle_or_independent_examples():
    assert find_cycle_or_independent_set(Graph.complete(13), 5, 4).kind == "cycle"
    r = find_cycle_or_independent_set(Graph.empty(13), 5, 4)
    assert r.kind == "independent" and len(r.independent) == 4
    # below the threshold "neither" is an honest answer: C_8 has no 5-cycle and alpha 4 < 5
    assert find_cycle_or_independent_set(Graph.cycle(8), 5, 5).kind == "neither"


def test_cycle_or_independent_random_13():
    rng = random.Random(13)
    for _ in range(60):
        g = random_graph(13, rng.uniform(0.1, 0.6), rng)
        r = find_cycle_or_independent_set(g, 5, 4)
        assert r.kind != "neither"
        if r.kind == "cycle":
            assert len(r.cycle) == 5 and is_cycle(g, r.cycle.vertices)
        else:
            ind = sorted(r.independent)
            assert len(ind) == 4 and not any(g.has_edge(a, b) for a, b in combinations(ind, 2))


def test_even_cycle_threshold_examples():
    assert even_cycle_threshold(3, 100) == 60000
    assert even_cycle_threshold(1, 10) == 2000
    assert 20 * 3 * 100 * 100 ** (1 / 3) == pytest.approx(27849.6, abs=0.1)
    vals = [even_cycle_threshold(4, n) for n in range(1, 300)]
    assert vals == sorted(vals)


def test_find_even_cycle():
    k44 = Graph.complete_bipartite(4, 4)
    c = find_even_cycle(k44, 8)
    assert len(c) == 8 and is_cycle(k44, c.vertices)
    assert find_even_cycle(Graph.cycle(6), 4) is None
    with pytest.raises(PreconditionError):
        find_even_cycle(k44, 5)
    rng = random.Random(60)
    g = random_graph(60, 0.5, rng)
    for two_ell in (4, 6, 8, 10):
        c = find_even_cycle(g, two_ell)
        assert len(c) == two_ell and is_cycle(g, c.vertices)


def test_small_mindeg_graphs_can_lack_long_short_cycles():
    # two cliques joined by a few edges: min degree 4 > alpha 2, yet no 6- or 7-cycle
    from pancyclic.formats import from_graph6

    g = from_graph6(b"I~{OGKF@w")
    assert g.min_degree() == 4 and brute_alpha(g) == 2
    assert brute_find_cycle(g, 6).status == NONE
    with pytest.raises(ConstructionStall):
        find_short_cycle(g, 6)
    assert len(find_short_cycle(g, 5).cycle) == 5
