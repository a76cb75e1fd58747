from __future__ import annotations

import random
from itertools import combinations

import pytest

from conftest import random_graph
from pancyclic.chorded import build_chorded_path, extend_to_short_cycle
from pancyclic.errors import ConstructionStall, PreconditionError
from pancyclic.graph import Graph, bfs_layers
from pancyclic.independence import independence_number
from pancyclic.paths import ChordedPath, Path, contract_chords


def check_builder_output(g, cp, k):
    p = cp.path
    assert p.validate(g) is None
    assert len(cp.chords) == k
    assert p.length <= 3 * k and p.order <= 3 * k + 1
    assert any(c.span == 2 for c in cp.chords)
    idx = p.index
    interiors = []
    for c in cp.chords:
        assert g.has_edge(c.a, c.b)
        i, j = sorted((idx[c.a], idx[c.b]))
        assert j - i == c.span
        interiors.append(set(range(i + 1, j)))
    # literal pairwise check, independent of the library's own helper
    for s, t in combinations(interiors, 2):
        assert not s & t
    for c1, c2 in combinations(cp.chords, 2):
        i1, j1 = sorted((idx[c1.a], idx[c1.b]))
        i2, j2 = sorted((idx[c2.a], idx[c2.b]))
        assert j1 <= i2 or j2 <= i1


def test_k7_examples():
    g = Graph.complete(7)
    cp = build_chorded_path(g, 1, strict=False)
    assert cp.path.order == 3 and len(cp.chords) == 1 and cp.chords[0].span == 2
    short = contract_chords(cp, 1)
    assert short.order == 2 and short.ends == cp.path.ends


def test_preconditions():
    with pytest.raises(PreconditionError):
        build_chorded_path(Graph.cycle(6), 1)  # min degree 2 < alpha 3
    with pytest.raises(PreconditionError):
        build_chorded_path(Graph.complete(7), 1)  # alpha/6 < 1
    with pytest.raises(PreconditionError):
        build_chorded_path(Graph.complete(7), 0, strict=False)
    with pytest.raises(ConstructionStall):
        build_chorded_path(Graph.cycle(6), 1, strict=False)


def _dense_instances(count, seed, n_range=(30, 60)):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(*n_range)
        g = random_graph(n, rng.uniform(0.35, 0.6), rng)
        a = independence_number(g)
        if g.min_degree() > a and a >= 6:
            out.append((g, a))
    return out


def test_builder_random_with_contraction():
    for g, a in _dense_instances(25, 7):
        for k in range(1, a // 6 + 1):
            cp = build_chorded_path(g, k, alpha=a)
            check_builder_output(g, cp, k)
            for kp in range(k + 1):
                q = contract_chords(cp, kp)
                assert q.order == cp.path.order - kp
                assert q.ends == cp.path.ends
                assert q.validate(g) is None


def test_builder_non_strict_on_small_graphs(rng):
    # outside the asymptotic regime the builder either succeeds correctly or stalls honestly
    for _ in range(200):
        g = random_graph(rng.randint(6, 14), rng.uniform(0.3, 0.9), rng)
        k = rng.randint(1, 4)
        try:
            cp = build_chorded_path(g, k, strict=False)
        except ConstructionStall:
            continue
        check_builder_output(g, cp, k)


def test_extend_examples():
    k6 = Graph.complete(6)
    cp = ChordedPath(Path((0, 1, 2)), ())
    c = extend_to_short_cycle(k6, cp, 6)
    assert len(c) == 3 and c.contains_path(cp.path)
    c6 = Graph.cycle(6)
    p = Path((0, 1, 2, 3, 4))
    c2 = extend_to_short_cycle(c6, ChordedPath(p, ()), 6)
    assert len(c2) == 6 and c2.validate(c6) is None
    with pytest.raises(ConstructionStall):
        extend_to_short_cycle(c6, ChordedPath(Path((0, 1, 2)), ()), 5)
    with pytest.raises(ConstructionStall):
        extend_to_short_cycle(Graph.path(4), ChordedPath(Path((0, 1, 2)), ()), 10)


def test_extend_length_matches_bfs():
    for g, a in _dense_instances(10, 11):
        cp = build_chorded_path(g, max(1, a // 6), alpha=a)
        p = cp.path
        c = extend_to_short_cycle(g, cp, g.n)
        assert c.validate(g) is None and c.contains_path(p)
        # independent oracle: BFS distance between the ends avoiding the interior
        forb = set(p.vertices[1:-1])
        d = bfs_layers(g, p.start, forbidden=forb).distance(p.end)
        assert len(c) == p.length + d
        assert len(c) <= p.length + 2 * g.n / a + 1
