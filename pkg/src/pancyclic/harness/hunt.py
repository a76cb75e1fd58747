"""Search small graphs with kappa > alpha for non-pancyclic ones.

Each hypothesis graph is checked twice: by the brute-force oracle, which is
ground truth, and by :func:`certify_pancyclic`.  A graph the oracle finds
non-pancyclic is a counterexample; a length the oracle finds but the
certifier misses is a disagreement, which means a bug in the pipelines.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from pathlib import Path
from typing import Iterable, Optional, Union

import numpy as np

from ..formats import read_graph6_file, to_graph6
from ..graph import Graph
from ..pipelines import PipelineParams, certify_pancyclic, route_for
from ..pipelines.certify import EXTERNAL, HAMILTON
from ..profile import ConditionProfile, profile
from .enumerate import MAX_LABELED, graph_from_code, screen
from .oracles import FOUND, NONE, is_cycle, is_pancyclic_brute


@dataclass
class HuntReport:
    n_range: tuple[int, int]
    graphs_scanned: int = 0
    hypothesis_hits: int = 0
    counterexamples: list[str] = field(default_factory=list)
    disagreements: list[dict] = field(default_factory=list)
    incomplete: int = 0
    oracle_unknown: int = 0
    routed: Counter = field(default_factory=Counter)
    fell_back: Counter = field(default_factory=Counter)

    @property
    def fallback_rate(self) -> dict[str, float]:
        return {k: self.fell_back[k] / v for k, v in sorted(self.routed.items()) if v}

    @property
    def clean(self) -> bool:
        return not self.counterexamples and not self.disagreements

    def merge(self, other: "HuntReport") -> "HuntReport":
        lo = min(self.n_range[0], other.n_range[0])
        hi = max(self.n_range[1], other.n_range[1])
        return HuntReport(
            (lo, hi),
            self.graphs_scanned + other.graphs_scanned,
            self.hypothesis_hits + other.hypothesis_hits,
            self.counterexamples + other.counterexamples,
            self.disagreements + other.disagreements,
            self.incomplete + other.incomplete,
            self.oracle_unknown + other.oracle_unknown,
            self.routed + other.routed,
            self.fell_back + other.fell_back,
        )

    def to_json(self) -> dict:
        return {
            "n_range": list(self.n_range),
            "graphs_scanned": self.graphs_scanned,
            "hypothesis_hits": self.hypothesis_hits,
            "counterexamples": list(self.counterexamples),
            "disagreements": list(self.disagreements),
            "incomplete_certificates": self.incomplete,
            "oracle_unknown": self.oracle_unknown,
            "fallback_rate": self.fallback_rate,
        }


def _family(n: int, alpha: int, ell: int, hypothesis: bool, delta) -> str:
    if not hypothesis:
        return "dfs"
    if ell == n:
        return HAMILTON
    if n >= 4 * alpha * alpha:
        return "external"
    return route_for(n, alpha, ell, delta)[0]


def _is_fallback(route: str) -> bool:
    return "fallback" in route or route == EXTERNAL


def check_graph(g: Graph, prof: ConditionProfile, params: PipelineParams, report: HuntReport) -> None:
    """Oracle plus certifier on one hypothesis graph, accumulated into ``report``."""
    report.hypothesis_hits += 1
    truth = is_pancyclic_brute(g)
    if any(a.status == NONE for a in truth.values()):
        report.counterexamples.append(to_graph6(g).decode())
    if any(a.status not in (FOUND, NONE) for a in truth.values()):
        report.oracle_unknown += 1
    cert = certify_pancyclic(g, params, profile=prof)
    if not cert.complete:
        report.incomplete += 1
    for ell, ans in truth.items():
        fam = _family(g.n, prof.alpha, ell, cert.hypothesis, params.delta)
        c = cert.cycles.get(ell)
        if c is not None:
            report.routed[fam] += 1
            if _is_fallback(cert.provenance[ell]):
                report.fell_back[fam] += 1
        problem = None
        if c is not None and not (is_cycle(g, c.vertices) and len(c) == ell):
            problem = "certificate cycle fails the literal check"
        elif c is None and ans.status == FOUND:
            problem = "oracle found a cycle the certifier missed"
        elif c is not None and ans.status == NONE:
            problem = "certifier found a cycle the oracle ruled out"
        if problem:
            report.disagreements.append({"graph6": to_graph6(g).decode(), "length": ell, "problem": problem})


def _labeled_shard(args) -> HuntReport:
    n, codes, alphas, kappas, mindegs, params = args
    rep = HuntReport((n, n))
    for code, a, k, d in zip(codes, alphas, kappas, mindegs):
        g = graph_from_code(n, int(code))
        check_graph(g, ConditionProfile(n, int(a), int(k), int(d)), params, rep)
    return rep


def _shards(n: int, params: PipelineParams, pieces: int) -> list[tuple]:
    codes, a, k, d = screen(n)
    keep = k > a
    codes, a, k, d = codes[keep], a[keep], k[keep], d[keep]
    out = []
    for idx in np.array_split(np.arange(len(codes)), max(1, pieces)):
        out.append((n, codes[idx], a[idx], k[idx], d[idx], params))
    return out


def hunt(
    n_max: int,
    graph6: Optional[Union[str, Path]] = None,
    *,
    n_min: int = 3,
    jobs: int = 1,
    params: PipelineParams = PipelineParams(),
) -> HuntReport:
    """Scan every graph on ``n_min..n_max`` vertices (labeled, or from a graph6 file)."""
    report = HuntReport((n_min, n_max))
    if graph6 is not None:
        return report.merge(hunt_graphs(read_graph6_file(graph6), n_min=n_min, n_max=n_max, params=params))
    if n_max > MAX_LABELED:
        from ..errors import PreconditionError

        raise PreconditionError(f"labeled hunting stops at n={MAX_LABELED}; pass a graph6 file")
    for n in range(n_min, n_max + 1):
        report.graphs_scanned += 1 << (n * (n - 1) // 2)
        shards = _shards(n, params, jobs * 4 if jobs > 1 else 1)
        if jobs > 1:
            with Pool(jobs) as pool:
                parts = pool.map(_labeled_shard, shards)
        else:
            parts = [_labeled_shard(s) for s in shards]
        for part in parts:
            report = report.merge(part)
    return report


def hunt_graphs(
    graphs: Iterable[Graph], *, n_min: int = 3, n_max: int = 64, params: PipelineParams = PipelineParams()
) -> HuntReport:
    """Same checks over an explicit graph stream; graphs failing kappa > alpha are skipped."""
    report = HuntReport((n_min, n_max))
    for g in graphs:
        if not n_min <= g.n <= n_max:
            continue
        report.graphs_scanned += 1
        prof = profile(g)
        if prof.kappa > prof.alpha:
            check_graph(g, prof, params, report)
    return report
