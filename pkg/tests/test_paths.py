from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pancyclic.errors import PreconditionError
from pancyclic.graph import Graph
from pancyclic.paths import (
    BACKWARD,
    FORWARD,
    Chord,
    ChordedPath,
    OrientedCycle,
    Path,
    chords_non_intersecting,
    contract_chords,
    max_cycle_span2_packing,
    predecessor,
    segment,
    validate_cycle,
)

C5 = OrientedCycle((0, 1, 2, 3, 4))
C6 = OrientedCycle(tuple(range(6)))


def test_predecessor_examples():
    assert predecessor(C5, 3, 1) == 2
    assert predecessor(C5, 0, 3) == 2
    for u in range(5):
        assert predecessor(C5, u, 0) == u
    with pytest.raises(PreconditionError):
        predecessor(C5, 9, 1)


def test_canonical_rotation_keeps_orientation():
    c = OrientedCycle((3, 4, 0, 1, 2))
    assert c.vertices == (0, 1, 2, 3, 4)
    r = OrientedCycle((2, 1, 0, 4, 3))
    assert r.vertices == (0, 4, 3, 2, 1)
    assert r != c and r.orientation == -c.orientation
    assert r.pred(0) == 1 and c.pred(0) == 4


@settings(max_examples=200, deadline=None)
@given(st.permutations(list(range(9))), st.integers(3, 9), st.data())
def test_predecessor_composes(perm, m, data):
    c = OrientedCycle(tuple(perm[:m]))
    u = data.draw(st.sampled_from(perm[:m]))
    for i in range(m):
        v = u
        for _ in range(i):
            v = predecessor(c, v, 1)
        assert predecessor(c, u, i) == v


def test_segment_examples():
    assert segment(C6, 1, 4, FORWARD).vertices == (1, 2, 3, 4)
    assert segment(C6, 1, 4, BACKWARD).vertices == (1, 0, 5, 4)
    assert segment(C6, 0, 1, FORWARD).vertices == (0, 1)
    with pytest.raises(PreconditionError):
        segment(C6, 2, 2)
    with pytest.raises(PreconditionError):
        segment(C6, 2, 7)


@settings(max_examples=200, deadline=None)
@given(st.permutations(list(range(8))), st.integers(3, 8), st.data())
def test_segments_partition_cycle(perm, m, data):
    c = OrientedCycle(tuple(perm[:m]))
    u, v = data.draw(st.lists(st.sampled_from(perm[:m]), min_size=2, max_size=2, unique=True))
    f, b = segment(c, u, v, FORWARD), segment(c, u, v, BACKWARD)
    assert not f.edge_set() & b.edge_set()
    assert f.edge_set() | b.edge_set() == c.edge_set()
    assert set(f) & set(b) == {u, v}
    assert f.vertices[1] == c.succ(u)


def test_validate_cycle_examples():
    assert validate_cycle(Graph.complete(4), OrientedCycle((0, 1, 2))) is None
    bad = validate_cycle(Graph.cycle(5), (0, 1, 3))
    assert bad.kind == "non-edge" and bad.pair == (1, 3)
    dup = validate_cycle(Graph.complete(4), (0, 1, 0, 2))
    assert dup.kind == "duplicate"


def _path_graph_with(n, extra):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + list(extra))


def test_contract_examples():
    g = _path_graph_with(5, [(0, 2)])
    cp = ChordedPath(Path(range(5)), (Chord(0, 2, 2),))
    assert contract_chords(cp, 1).vertices == (0, 2, 3, 4)
    assert contract_chords(cp, 0) == cp.path
    g7 = _path_graph_with(7, [(0, 2), (3, 6)])
    cp7 = ChordedPath(Path(range(7)), (Chord(0, 2, 2), Chord(3, 6, 3)))
    assert cp7.validate(g7) is None
    out = contract_chords(cp7, 3)
    assert out.order == 4 and out.ends == (0, 6) and out.validate(g7) is None
    with pytest.raises(PreconditionError):
        contract_chords(cp7, 4)
    only3 = ChordedPath(Path(range(7)), (Chord(3, 6, 3),))
    with pytest.raises(PreconditionError):
        contract_chords(only3, 1)


def _oracle_orders(g, cp):
    """Orders reachable by contracting any subset of the chords."""
    orders = set()
    idx = cp.path.index
    for r in range(len(cp.chords) + 1):
        for sub in combinations(cp.chords, r):
            drop = set()
            for c in sub:
                drop |= set(cp.path.vertices[idx[c.a] + 1 : idx[c.b]])
            seq = [v for v in cp.path.vertices if v not in drop]
            if Path(seq).validate(g) is None:
                orders.add(len(seq))
    return orders


def random_chorded_path(rng: random.Random):
    """Path 0..L with random non-intersecting chords, at least one span 2."""
    chords = []
    pos = 0
    while pos < 20 and len(chords) < 7:
        pos += rng.randint(0, 2)
        span = rng.choice((2, 3))
        chords.append((pos, pos + span, span))
        pos += span
    if not any(s == 2 for *_, s in chords):
        chords.append((pos, pos + 2, 2))
        pos += 2
    length = pos + rng.randint(0, 3)
    g = _path_graph_with(length + 1, [(a, b) for a, b, _ in chords])
    return g, ChordedPath(Path(range(length + 1)), tuple(Chord(a, b, s) for a, b, s in chords))


def test_contract_every_feasible_amount():
    rng = random.Random(7)
    for _ in range(150):
        g, cp = random_chorded_path(rng)
        assert cp.validate(g) is None
        reachable = _oracle_orders(g, cp)
        for k in range(cp.capacity + 1):
            out = contract_chords(cp, k)
            assert out.order == cp.path.order - k
            assert out.ends == cp.path.ends
            assert set(out) <= set(cp.path)
            assert out.validate(g) is None
            assert out.order in reachable


def test_non_intersecting_allows_shared_ends_only():
    assert chords_non_intersecting([(0, 2), (2, 5)])
    assert not chords_non_intersecting([(0, 2), (1, 3)])
    assert not chords_non_intersecting([(0, 3), (1, 3)])


def test_cycle_span2_packing():
    k6 = Graph.complete(6)
    c = OrientedCycle(tuple(range(6)))
    assert len(max_cycle_span2_packing(k6, c)) == 3
    c5 = OrientedCycle(tuple(range(5)))
    assert len(max_cycle_span2_packing(Graph.complete(5), c5)) == 2
    assert max_cycle_span2_packing(Graph.cycle(6), c) == []


def test_json_is_canonical_rotation():
    assert OrientedCycle((4, 2, 7)).to_json() == [2, 7, 4]
    assert Path((3, 1)).to_json() == [3, 1]
