"""Write every graph on N vertices up to isomorphism as a graph6 file.

Grows graphs one edge at a time and keeps one representative per
isomorphism class (Weisfeiler-Lehman hash buckets, then an exact networkx
isomorphism test).  Only the lower half of the edge counts is built; the rest
are complements.  Used once to produce ``tests/data/graphs8.g6``.

    python tools/make_graph6_corpus.py 8 tests/data/graphs8.g6
"""

from __future__ import annotations

import sys
from itertools import combinations

import networkx as nx

from pancyclic.formats import to_graph6
from pancyclic.graph import Graph


def _key(h: nx.Graph) -> str:
    return nx.weisfeiler_lehman_graph_hash(h, iterations=3)


def classes(n: int) -> list[nx.Graph]:
    half = n * (n - 1) // 4
    level = [nx.empty_graph(n)]
    levels = [level]
    for _ in range(half):
        buckets: dict[str, list[nx.Graph]] = {}
        nxt = []
        for h in level:
            for u, v in combinations(range(n), 2):
                if h.has_edge(u, v):
                    continue
                c = h.copy()
                c.add_edge(u, v)
                b = buckets.setdefault(_key(c), [])
                if not any(nx.is_isomorphic(c, o) for o in b):
                    b.append(c)
                    nxt.append(c)
        level = nxt
        levels.append(level)
    out = [h for lv in levels for h in lv]
    top = n * (n - 1) // 2
    for m in range(half + 1, top + 1):
        out += [nx.complement(h) for h in levels[top - m]]
    return out


def main(argv: list[str]) -> int:
    n, path = int(argv[0]), argv[1]
    gs = classes(n)
    with open(path, "wb") as fh:
        for h in gs:
            fh.write(to_graph6(Graph.from_edges(n, h.edges())) + b"\n")
    print(f"{len(gs)} graphs on {n} vertices")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
