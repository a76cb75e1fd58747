from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from pancyclic.graph import Graph, is_connected


def from_nx(h: nx.Graph) -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_alpha(g: Graph) -> int:
    best = 0
    for mask in range(1 << g.n):
        if mask.bit_count() > best and g.is_independent(mask):
            best = mask.bit_count()
    return best


def brute_kappa(g: Graph) -> int:
    if g.is_complete():
        return g.n - 1
    full = g.vertex_mask
    for size in range(g.n - 1):
        for cut in combinations(range(g.n), size):
            rest = full
            for v in cut:
                rest &= ~(1 << v)
            if not is_connected(g, rest):
                return size
    return g.n - 1


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def atlas_graphs(max_n: int = 7):
    for h in nx.graph_atlas_g():
        if 0 < h.number_of_nodes() <= max_n:
            yield from_nx(h)


@pytest.fixture
def rng():
    return random.Random(12345)


# acceptance lines, printed once at the end of the run
ACCEPTANCE: dict[int, tuple[bool, str, str]] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> bool:
    ACCEPTANCE[number] = (ok, title, detail)
    print(f"[{number:>2}] {'PASS' if ok else 'FAIL'}  {title}  {detail}")
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{number:>2}] {'PASS' if ok else 'FAIL'}  {title}  {detail}")
