from __future__ import annotations

import random

import networkx as nx
import pytest

from conftest import random_graph, to_nx
from pancyclic.errors import PreconditionError
from pancyclic.formats import from_edgelist, from_graph6, load_graph, to_edgelist, to_graph6
from pancyclic.graph import Graph


def test_known_encodings():
    assert to_graph6(Graph.petersen()) == b"IheA@GUAo"
    assert to_graph6(Graph.empty(0)) == b"?"
    assert to_graph6(Graph.complete(2)) == b"A_"
    assert from_graph6(b">>graph6<<IheA@GUAo\n") == Graph.petersen()


def test_matches_networkx_encoder_including_long_headers():
    rng = random.Random(0)
    for n in (1, 5, 62, 63, 64, 100):
        g = random_graph(n, 0.3, rng)
        ours = to_graph6(g)
        assert ours == nx.to_graph6_bytes(to_nx(g), header=False).strip()
        assert from_graph6(ours) == g


def test_malformed_graph6_rejected():
    with pytest.raises(PreconditionError):
        from_graph6(b"I")  # truncated body
    with pytest.raises(PreconditionError):
        from_graph6(b"A`")  # padding bit set
    with pytest.raises(PreconditionError):
        from_graph6("Ab\x10")


def test_edgelist_round_trip(tmp_path):
    g = Graph.petersen()
    text = to_edgelist(g)
    assert text.splitlines()[0] == "10 15"
    assert from_edgelist(text) == g
    f = tmp_path / "p.txt"
    f.write_text(text)
    assert load_graph(f) == g
    f6 = tmp_path / "p.g6"
    f6.write_bytes(to_graph6(g) + b"\n")
    assert load_graph(f6) == g
    with pytest.raises(PreconditionError):
        from_edgelist("3 2\n0 1\n")
