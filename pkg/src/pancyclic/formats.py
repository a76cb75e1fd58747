"""graph6 and plain edge-list reading/writing.

graph6 packs the upper triangle column by column (bit for pair ``i < j``
ordered by ``j`` then ``i``) into 6-bit groups, big-endian, each offset by 63.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Iterator, Union

from .errors import PreconditionError
from .graph import MAX_VERTICES, Graph

HEADER = b">>graph6<<"


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise PreconditionError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise PreconditionError("vertex count too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    if not data:
        raise PreconditionError("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise PreconditionError("truncated graph6 size field")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise PreconditionError("truncated graph6 size field")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def to_graph6(g: Graph, header: bool = False) -> bytes:
    bits = []
    adj = g.adj
    for j in range(1, g.n):
        row = adj[j]
        for i in range(j):
            bits.append(row >> i & 1)
    while len(bits) % 6:
        bits.append(0)
    body = bytearray()
    for k in range(0, len(bits), 6):
        v = 0
        for b in bits[k : k + 6]:
            v = (v << 1) | b
        body.append(v + 63)
    return (HEADER if header else b"") + _encode_n(g.n) + bytes(body)


def from_graph6(data: Union[bytes, str]) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(HEADER):
        data = data[len(HEADER) :]
    if any(c < 63 or c > 126 for c in data):
        raise PreconditionError("graph6 bytes must lie in 63..126")
    n, pos = _decode_n(data)
    if n > MAX_VERTICES:
        raise PreconditionError(f"graph6 graph has {n} vertices, above the cap {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise PreconditionError(f"graph6 body has {len(body)} bytes, expected {need}")
    rows = [0] * n
    idx = 0
    i, j = 0, 1
    for c in body:
        v = c - 63
        for s in range(5, -1, -1):
            if idx >= nbits:
                if v >> s & 1:
                    raise PreconditionError("nonzero padding bits in graph6 string")
                continue
            if v >> s & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            idx += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return Graph(n, rows, check=False)


def read_graph6_file(path: Union[str, Path]) -> Iterator[Graph]:
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                yield from_graph6(line)


def write_graph6_file(path: Union[str, Path], graphs: Iterable[Graph]) -> None:
    with open(path, "wb") as fh:
        for g in graphs:
            fh.write(to_graph6(g) + b"\n")


def to_edgelist(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def from_edgelist(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise PreconditionError("empty edge list")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        edges = [(int(a), int(b)) for a, b in lines[1:]]
    except (ValueError, IndexError) as exc:
        raise PreconditionError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise PreconditionError(f"edge list header promises {m} edges, found {len(edges)}")
    if n > MAX_VERTICES:
        raise PreconditionError(f"edge list has {n} vertices, above the cap {MAX_VERTICES}")
    return Graph.from_edges(n, edges)


def load_graph(path: Union[str, Path], fmt: str = "auto") -> Graph:
    """Read a single graph from a graph6 or edge-list file."""
    raw = Path(path).read_bytes()
    if fmt == "auto":
        first = raw.strip().split(b"\n", 1)[0].strip()
        fmt = "edgelist" if first and all(tok.isdigit() for tok in first.split()) and len(first.split()) == 2 else "graph6"
    if fmt == "graph6":
        lines = [ln for ln in raw.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise PreconditionError(f"expected one graph6 line, found {len(lines)}")
        return from_graph6(lines[0])
    if fmt == "edgelist":
        return from_edgelist(raw.decode("ascii"))
    raise PreconditionError(f"unknown format {fmt!r}")
