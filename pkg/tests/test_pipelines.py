from __future__ import annotations

import random
from fractions import Fraction

import pytest

from pancyclic.errors import ConstructionStall, PreconditionError
from pancyclic.generators import random_condition_graph
from pancyclic.graph import Graph, components
from pancyclic.harness.lemmas import _planted_p5_free, mindeg_instance
from pancyclic.harness.oracles import is_cycle
from pancyclic.paths import OrientedCycle, Path
from pancyclic.pipelines import (
    FALLBACK_DFS,
    Certificate,
    PipelineParams,
    certify_pancyclic,
    cycle_of_length,
    dispatch_gaps,
    extend_keeping_forest,
    length3_remainder,
    lemma_long,
    lower_range,
    lower_range_odd_anchor,
    mid_range_extend,
    middle_range,
    n_over_alpha_paths,
    p5free_structure,
    shorten_path_indep,
    shorten_path_mindeg,
    splice_anchor,
    upper_range,
    windows,
)
from pancyclic.pipelines.common import count_cycle_chords, has_p5, is_forest_mask, shorten_cycle_by
from pancyclic.pipelines.shortening import indep_window, mindeg_window, shorten_to
from pancyclic.pipelines.structure import APEX, K4, TREE
from pancyclic.profile import ConditionProfile
from pancyclic.search import find_path_of_length


def circulant(n: int, d: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + j) % n) for i in range(n) for j in range(1, d + 1)])


# --- params -------------------------------------------------------------------


def test_params_validation():
    PipelineParams()
    with pytest.raises(PreconditionError):
        PipelineParams(delta=Fraction(1, 5), eta=Fraction(1, 10))
    with pytest.raises(PreconditionError):
        PipelineParams(dfs_budget=0)
    assert PipelineParams().with_(seed=3).seed == 3


# --- cycle chords -------------------------------------------------------------


def test_shorten_cycle_by_exact():
    g = Graph.complete(12)
    c = OrientedCycle(tuple(range(12)))
    for t in range(0, 7):
        out = shorten_cycle_by(g, c, t)
        assert out is not None and len(out) == 12 - t and is_cycle(g, out.vertices)
    assert shorten_cycle_by(Graph.cycle(8), OrientedCycle(tuple(range(8))), 1) is None
    assert count_cycle_chords(Graph.cycle(8), OrientedCycle(tuple(range(8)))) == 0


# --- shortening ---------------------------------------------------------------


def test_shortening_examples():
    g = Graph.complete(20)
    p = Path(tuple(range(20)))
    q = shorten_path_mindeg(g, p)
    assert q.order == 19 and q.ends == p.ends and q.validate(g) is None
    assert mindeg_window(g, p) == 22
    q = shorten_path_indep(g, p, 1)
    assert q.order < 20 and q.order >= 20 - indep_window(p, 1)
    with pytest.raises(ConstructionStall):
        shorten_path_mindeg(Graph.path(8), Path(tuple(range(8))))
    with pytest.raises(PreconditionError):
        shorten_path_indep(g, Path((0, 1, 2)), 1, strict=True)


def test_shorten_to_lands_in_interval():
    g = Graph.complete(30)
    p = Path(tuple(range(30)))
    q = shorten_to(g, p, 10, 12, 1)
    assert 10 <= q.length <= 12 and q.ends == p.ends and q.validate(g) is None


def test_shortening_random_windows():
    rng = random.Random(4)
    for _ in range(20):
        g, prof = random_condition_graph(rng.randint(15, 30), "mindeg>alpha", rng.getrandbits(32))
        p = Path(tuple(rng.sample(range(g.n), 2)))
        res = find_path_of_length(g, p.start, p.end, rng.randint(4, g.n - 2), budget=50_000)
        if res.status != "found":
            continue
        p = Path(res.vertices)
        try:
            q = shorten_path_mindeg(g, p)
        except ConstructionStall:
            continue
        assert q.ends == p.ends and p.order - mindeg_window(g, p) <= q.order < p.order


# --- P5-free structure --------------------------------------------------------


def test_p5_structure_examples():
    assert p5free_structure(Graph.complete(4)).kind == K4
    assert p5free_structure(Graph.star(5)).kind == TREE
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)])
    st = p5free_structure(g)
    assert st.kind == APEX and st.apex == 0 and st.verify(g)
    with pytest.raises(PreconditionError):
        p5free_structure(Graph.path(5))
    with pytest.raises(PreconditionError):
        p5free_structure(Graph.empty(3))


def test_p5_structure_exhaustive_small():
    from conftest import atlas_graphs

    for g in atlas_graphs(7):
        full = g.vertex_mask
        if len(components(g, full)) != 1 or has_p5(g, full):
            continue
        assert p5free_structure(g).verify(g)


def test_extend_keeping_forest_planted():
    rng = random.Random(9)
    for _ in range(60):
        g, c, h = _planted_p5_free(rng)
        out = extend_keeping_forest(g, c, h)
        rest = h & ~out.mask
        assert is_cycle(g, out.vertices) and set(c) <= set(out)
        assert rest and is_forest_mask(g, rest)


# --- long cycles --------------------------------------------------------------


def test_length3_remainder_complete():
    g = Graph.complete(30)
    c0 = OrientedCycle(tuple(range(26)))
    for ell in (27, 28, 29, 30):
        out = length3_remainder(g, c0, ell, min_chords=0)
        assert len(out) == ell and is_cycle(g, out.vertices)
    with pytest.raises(PreconditionError):
        length3_remainder(g, c0, 26, min_chords=0)
    # thirteen chords cannot meet the default of eighteen
    with pytest.raises(PreconditionError):
        length3_remainder(g, c0, 28)


def test_lemma_long_stops_when_outside_is_p5_free():
    g = Graph.complete(6)
    p0 = Path((0, 1, 2))
    c0 = OrientedCycle((0, 1, 2, 3, 4))
    res = lemma_long(g, c0, p0, 6, alpha=1, delta=Fraction(1, 10))
    assert res.cycle == c0 and not res.moves


def test_lemma_long_complete_40():
    g = Graph.complete(40)
    p0 = Path((0, 1, 2))
    c0 = OrientedCycle((0, 1, 2))
    delta = Fraction(1, 10)
    res = lemma_long(g, c0, p0, 30, alpha=1, delta=delta)
    c = res.cycle
    assert is_cycle(g, c.vertices) and len(c) > 3
    assert len(c) <= 30 + Fraction(40) / (delta * 1)
    outside = components(g, g.vertex_mask & ~c.mask)
    assert len(c) >= 30 or all(not has_p5(g, h) for h in outside)
    assert res.keeps_p0 and c.contains_path(p0)


@pytest.mark.parametrize("ell", [30, 29, 25, 12])
def test_upper_range_complete(ell):
    g = Graph.complete(30)
    res = upper_range(g, ell)
    assert len(res.cycle) == ell and is_cycle(g, res.cycle.vertices)
    assert not res.fallback


def test_upper_range_random():
    g, prof = random_condition_graph(40, "kappa>alpha", 3)
    for ell in (g.n - 3, g.n - 1):
        res = upper_range(g, ell, profile=prof)
        assert len(res.cycle) == ell and is_cycle(g, res.cycle.vertices)


# --- middle -------------------------------------------------------------------


def test_n_over_alpha_shortcut():
    g, prof = random_condition_graph(30, "kappa>alpha", 1)
    res = n_over_alpha_paths(g, alpha=prof.alpha, kappa=prof.kappa)
    assert res.structural_violations(g) == []
    assert set(res.p0.path.ends) == set(res.p1.ends)


def test_n_over_alpha_layered_circulant():
    g = circulant(400, 16)
    res = n_over_alpha_paths(g, alpha=23, kappa=32, delta=Fraction(1, 20), force_layered=True)
    assert res.branch == "layered"
    assert res.structural_violations(g) == []
    assert all(res.bounds.values()), res.bounds


def test_n_over_alpha_needs_hypothesis():
    with pytest.raises(PreconditionError):
        n_over_alpha_paths(Graph.cycle(6), alpha=3, kappa=2)


def test_mid_range_extend_complete():
    g = Graph.complete(100)
    p = Path(tuple(range(10)))
    ext = mid_range_extend(g, p, 20, 1)
    q = ext.path
    assert q.ends == p.ends and p.length < q.length <= p.length + 20 and q.validate(g) is None
    with pytest.raises(PreconditionError):
        mid_range_extend(g, p, 20, 1, strict=True)
    with pytest.raises(PreconditionError):
        mid_range_extend(g, p, 5, 1)


def _long_links_instance():
    # path 0..29, an 8-cycle on 30..37, eight links of length 5 from the cycle to the path
    path = list(range(30))
    cyc = list(range(30, 38))
    ends = [10, 2, 5, 8, 11, 14, 18, 22]  # links 0 and 4 land on adjacent path vertices
    edges = list(zip(path, path[1:])) + [(cyc[i], cyc[(i + 1) % 8]) for i in range(8)]
    nxt = 38
    links = []
    for i in range(8):
        inner = list(range(nxt, nxt + 4))
        nxt += 4
        chain = [cyc[i]] + inner + [ends[i]]
        edges += list(zip(chain, chain[1:]))
        links.append(chain)
    # edge between the vertices two steps from the path on links 0 and 4
    edges.append((links[0][3], links[4][3]))
    return Graph.from_edges(nxt, edges), Path(tuple(path))


def test_mid_range_extend_long_links():
    g, p = _long_links_instance()
    ext = mid_range_extend(g, p, 16, 8)
    assert ext.branch == "long-paths"
    q = ext.path
    assert q.ends == p.ends and q.length == p.length + 4 and q.validate(g) is None


def test_middle_range_random():
    g, prof = random_condition_graph(40, "kappa>alpha", 2)
    for ell in (8, 12):
        res = middle_range(g, ell, profile=prof)
        assert len(res.cycle) == ell and is_cycle(g, res.cycle.vertices)


# --- lower --------------------------------------------------------------------


def test_lower_range_examples():
    g = Graph.complete(10)
    res = lower_range(g, 4)
    assert len(res.cycle) == 4 and is_cycle(g, res.cycle.vertices)


def test_splice_anchor_triangle_and_five():
    c = OrientedCycle(tuple(range(8)))
    g = Graph.from_edges(11, [(i, (i + 1) % 8) for i in range(8)] + [(1, 8), (8, 9), (9, 10), (10, 0)])
    out = splice_anchor(g, c, (0, 1), (0, 1, 8, 9, 10))
    assert len(out) == 11 and is_cycle(g, out.vertices)
    g3 = Graph.from_edges(9, [(i, (i + 1) % 8) for i in range(8)] + [(3, 8), (8, 4)])
    out = splice_anchor(g3, c, (3, 4), (4, 3, 8))
    assert len(out) == 9 and is_cycle(g3, out.vertices)
    with pytest.raises(PreconditionError):
        splice_anchor(g, c, (0, 2), (0, 2, 8))


def test_lower_range_odd_anchor_exact():
    rng = random.Random(21)
    done = 0
    for t in range(12):
        g, a = mindeg_instance(rng, 3, 60)
        for ell in (9, 11, 10):
            try:
                run = lower_range_odd_anchor(g, ell, t, alpha=a, params=PipelineParams())
            except ConstructionStall:
                continue
            assert len(run.cycle) == ell and is_cycle(g, run.cycle.vertices)
            done += 1
    assert done > 0


def test_lower_range_random_all_short_lengths():
    g, prof = random_condition_graph(50, "kappa>alpha", 5)
    for ell in range(3, 12):
        res = lower_range(g, ell, profile=prof)
        assert len(res.cycle) == ell and is_cycle(g, res.cycle.vertices)


# --- certificate --------------------------------------------------------------


def test_certify_small_examples():
    k6 = Graph.complete(6)
    cert = certify_pancyclic(k6)
    assert cert.complete and cert.verify(k6)
    js = cert.to_json()
    assert set(js) == {"n", "alpha", "kappa", "cycles", "provenance", "missing"}
    assert js["cycles"]["6"] == [0, 1, 2, 3, 4, 5]
    assert cert.provenance[6] == "ce-hamilton"
    k33 = Graph.complete_bipartite(3, 3)
    cert = certify_pancyclic(k33)
    assert not cert.hypothesis and not cert.complete
    assert sorted(cert.cycles) == [4, 6] and cert.missing == [3, 5]


def test_certify_random():
    g, prof = random_condition_graph(30, "kappa>alpha", 11)
    cert = certify_pancyclic(g, profile=prof)
    assert cert.complete and cert.verify(g)
    for ell, c in cert.cycles.items():
        assert len(c) == ell and is_cycle(g, c.vertices)
    found = cycle_of_length(g, 17, profile=prof)
    assert found is not None and len(found[0]) == 17


def test_certificate_refuses_bad_cycle():
    from pancyclic.errors import InvariantViolation

    g = Graph.cycle(5)
    cert = Certificate(ConditionProfile(5, 2, 2, 2))
    with pytest.raises(InvariantViolation):
        cert.add(g, 3, OrientedCycle((0, 1, 2)), FALLBACK_DFS)


def _uncovered(n, a, delta):
    return [ell for ell in range(3, n + 1) if not windows(n, a, ell, delta)]


@pytest.mark.parametrize("delta", [Fraction(1, 100), Fraction(1, 5), Fraction(1, 2)])
def test_dispatch_gaps_match_per_length_windows(delta):
    gaps = dispatch_gaps(45, delta)
    fast = {}
    for gp in gaps:
        fast.setdefault((gp.n, gp.alpha), []).extend(range(gp.lo, gp.hi + 1))
    slow = {}
    for n in range(3, 46):
        for a in range(1, n + 1):
            if 4 * a * a >= n:
                miss = _uncovered(n, a, delta)
                if miss:
                    slow[(n, a)] = miss
    assert fast == slow


def test_windows_at_small_n_route_everything_low():
    # at n = 7 no upper or middle window applies
    for a in range(2, 8):
        for ell in range(3, 8):
            assert "upper" not in windows(7, a, ell, Fraction(1, 100))
            assert "middle" not in windows(7, a, ell, Fraction(1, 100))
