"""Labeled graph enumeration and a vectorised alpha / kappa screen.

A labeled graph on ``n`` vertices is an integer code whose bit ``i`` says
whether the ``i``-th pair of ``combinations(range(n), 2)`` is an edge.
"""

from __future__ import annotations

from itertools import combinations
from pathlib import Path
from typing import Iterator, Optional, Union

import numpy as np

from ..errors import PreconditionError
from ..formats import read_graph6_file
from ..graph import Graph

MAX_LABELED = 7
CHUNK = 1 << 18


def pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))


def graph_from_code(n: int, code: int) -> Graph:
    return Graph.from_edges(n, [e for i, e in enumerate(pairs(n)) if code >> i & 1])


def code_of(g: Graph) -> int:
    idx = {e: i for i, e in enumerate(pairs(g.n))}
    return sum(1 << idx[(u, v)] for u, v in g.edges())


def enumerate_graphs(n: int, graph6: Optional[Union[str, Path]] = None) -> Iterator[Graph]:
    """Every labeled graph on ``n`` vertices, or the graphs of a graph6 file."""
    if graph6 is not None:
        for g in read_graph6_file(graph6):
            if g.n == n:
                yield g
        return
    if n < 0 or n > MAX_LABELED:
        raise PreconditionError(f"labeled enumeration stops at n={MAX_LABELED}; pass a graph6 file for n={n}")
    ps = pairs(n)
    for code in range(1 << len(ps)):
        yield Graph.from_edges(n, [e for i, e in enumerate(ps) if code >> i & 1])


def _adjacency_bits(n: int, codes: np.ndarray) -> list[np.ndarray]:
    """Per vertex, a uint8 array holding its neighbourhood bitmask in every graph."""
    adj = [np.zeros(codes.shape, dtype=np.uint8) for _ in range(n)]
    for i, (u, v) in enumerate(pairs(n)):
        bit = ((codes >> i) & 1).astype(np.uint8)
        adj[u] |= bit << v
        adj[v] |= bit << u
    return adj


def _popcount8(x: np.ndarray) -> np.ndarray:
    table = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)
    return table[x]


def _alpha(n: int, adj: list[np.ndarray]) -> np.ndarray:
    size = len(adj[0])
    alpha = np.zeros(size, dtype=np.uint8)
    # largest subset first so the answer only ever rises
    for s in sorted(range(1, 1 << n), key=lambda m: -bin(m).count("1")):
        k = bin(s).count("1")
        todo = alpha < k
        if not todo.any():
            continue
        clash = np.zeros(size, dtype=bool)
        for v in range(n):
            if s >> v & 1:
                clash |= (adj[v] & s) != 0
        alpha[todo & ~clash] = k
    return alpha


def _kappa(n: int, adj: list[np.ndarray]) -> np.ndarray:
    size = len(adj[0])
    kappa = np.full(size, n - 1, dtype=np.uint8)
    if n < 2:
        return np.zeros(size, dtype=np.uint8)
    # a disconnected induced subgraph on s vertices is a cut of size n - |s|
    for s in sorted(range(1, 1 << n), key=lambda m: -bin(m).count("1")):
        k = bin(s).count("1")
        if k < 2:
            continue
        cut = n - k
        todo = kappa > cut
        if not todo.any():
            continue
        start = s & -s
        reach = np.full(size, start, dtype=np.uint8)
        for _ in range(k - 1):
            grow = reach.copy()
            for v in range(n):
                if s >> v & 1:
                    hit = (reach >> v) & 1
                    grow |= adj[v] * hit & s
            reach = grow
        kappa[todo & (reach != s)] = cut
    return kappa


def screen(n: int, codes: Optional[np.ndarray] = None) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Exact ``(codes, alpha, kappa, min_degree)`` for a batch of labeled graphs.

    Defaults to every labeled graph on ``n`` vertices, processed in chunks.
    """
    if n > 8:
        raise PreconditionError("the vectorised screen handles at most 8 vertices")
    if codes is None:
        codes = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
    out_a, out_k, out_d = [], [], []
    for lo in range(0, len(codes), CHUNK):
        chunk = codes[lo : lo + CHUNK]
        adj = _adjacency_bits(n, chunk)
        out_a.append(_alpha(n, adj))
        out_k.append(_kappa(n, adj))
        deg = np.stack([_popcount8(a) for a in adj]) if n else np.zeros((1, len(chunk)), dtype=np.uint8)
        out_d.append(deg.min(axis=0))
    cat = lambda xs: np.concatenate(xs) if xs else np.zeros(0, dtype=np.uint8)
    return codes, cat(out_a), cat(out_k), cat(out_d)


def hypothesis_codes(n: int, strict: bool = True) -> np.ndarray:
    """Codes of the labeled graphs with kappa > alpha (or >= with ``strict=False``)."""
    codes, a, k, _ = screen(n)
    keep = k > a if strict else k >= a
    return codes[keep]
