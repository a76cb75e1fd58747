"""Per-length dispatch and the pancyclicity certificate."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..errors import BudgetExceeded, ConstructionStall, InvariantViolation, PancyclicError, PreconditionError
from ..graph import Graph
from ..paths import OrientedCycle, cycle_violation
from ..profile import ConditionProfile, profile as compute_profile
from ..rotation import ce_hamilton
from ..search import FOUND, NONE, find_cycle_of_length
from .base import FALLBACK_DFS, RangeResult
from .lower import lower_range, lower_window
from .middle import middle_range, middle_window
from .params import PipelineParams
from .upper import upper_range, upper_window

HAMILTON = "ce-hamilton"
EXTERNAL = "external-theorem fallback"
OUT_OF_WINDOW = "out-of-window"
PLAIN_DFS = "dfs"

# ---------------------------------------------------------------------------
# windows


def windows(n: int, alpha: int, ell: int, delta) -> tuple[str, ...]:
    """Range windows that accept ``ell``, in the order lower, middle, upper."""
    delta = Fraction(delta)
    out = []
    if lower_window(n, alpha, ell, delta):
        out.append("lower")
    if middle_window(n, alpha, ell, delta):
        out.append("middle")
    if upper_window(n, alpha, ell, delta) and alpha <= n <= 4 * alpha * alpha:
        out.append("upper")
    return tuple(out)


@dataclass(frozen=True)
class Gap:
    n: int
    alpha: int
    lo: int
    hi: int

    @property
    def size(self) -> int:
        return self.hi - self.lo + 1


def dispatch_gaps(n_max: int, delta, n_min: int = 3) -> list[Gap]:
    """Every run of lengths that no window accepts, over ``alpha <= n <= 4 alpha^2``.

    Works per ``(n, alpha)`` with exact integer interval arithmetic.
    """
    d = Fraction(delta)
    p, q = d.numerator, d.denominator
    gaps = []
    for n in range(n_min, n_max + 1):
        for a in range(1, n + 1):
            if 4 * a * a < n:
                continue
            spans = []
            lo_hi = max(n // a, (p * a) // q)
            spans.append((3, lo_hi))
            if a**3 * q**3 <= p**3 * n * n:
                spans.append((-(-n // a), (p * n * n) // (q * a * a)))
            spans.append((-(-n * q // (p * a)), n))
            spans.sort()
            cur = 3
            for s, e in spans:
                if e < s:
                    continue
                if s > cur:
                    gaps.append(Gap(n, a, cur, min(s - 1, n)))
                cur = max(cur, e + 1)
                if cur > n:
                    break
            if cur <= n:
                gaps.append(Gap(n, a, cur, n))
    return [gp for gp in gaps if gp.lo <= gp.hi]


# ---------------------------------------------------------------------------
# certificate


@dataclass
class Certificate:
    profile: ConditionProfile
    cycles: dict[int, OrientedCycle] = field(default_factory=dict)
    provenance: dict[int, str] = field(default_factory=dict)
    missing: list[int] = field(default_factory=list)
    notes: dict[int, str] = field(default_factory=dict)

    @property
    def hypothesis(self) -> bool:
        return self.profile.kappa > self.profile.alpha

    @property
    def complete(self) -> bool:
        return set(self.cycles) == set(range(3, self.profile.n + 1))

    def fallback_lengths(self) -> list[int]:
        return sorted(k for k, v in self.provenance.items() if v.startswith("fallback") or v == EXTERNAL)

    def add(self, g: Graph, ell: int, c: OrientedCycle, route: str) -> None:
        bad = cycle_violation(g, c.vertices)
        if bad is not None or len(c) != ell:
            raise InvariantViolation("refusing to store a bad cycle", {"length": ell, "cycle": list(c), "problem": str(bad)})
        self.cycles[ell] = c
        self.provenance[ell] = route

    def verify(self, g: Graph) -> bool:
        return all(cycle_violation(g, c.vertices) is None and len(c) == k for k, c in self.cycles.items())

    def to_json(self) -> dict:
        return {
            "n": self.profile.n,
            "alpha": self.profile.alpha,
            "kappa": self.profile.kappa,
            "cycles": {str(k): list(self.cycles[k].vertices) for k in sorted(self.cycles)},
            "provenance": {str(k): self.provenance[k] for k in sorted(self.provenance)},
            "missing": sorted(self.missing),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)


_RANGES = {"lower": lower_range, "middle": middle_range, "upper": upper_range}


def route_for(n: int, alpha: int, ell: int, delta) -> tuple[str, bool]:
    """Range pipeline for ``ell`` and whether a window actually accepts it."""
    w = windows(n, alpha, ell, delta)
    if w:
        return w[0], True
    if ell <= 7:
        return "lower", False
    if 2 * ell >= n:
        return "upper", False
    return "middle", False


def _dfs(g: Graph, ell: int, budget: int) -> Optional[OrientedCycle]:
    res = find_cycle_of_length(g, ell, budget)
    if res.status == FOUND:
        return OrientedCycle(res.vertices)
    if res.status == NONE:
        return None
    raise BudgetExceeded(f"cycle search for length {ell} ran out of budget", {"length": ell})


def certify_pancyclic(
    g: Graph, params: PipelineParams = PipelineParams(), profile: Optional[ConditionProfile] = None
) -> Certificate:
    """A cycle for every length 3..n where one can be found, with its route."""
    prof = profile or compute_profile(g)
    cert = Certificate(prof)
    n, alpha = g.n, prof.alpha
    for ell in range(3, n + 1):
        try:
            _one_length(g, ell, params, prof, cert)
        except BudgetExceeded as exc:
            cert.missing.append(ell)
            cert.notes[ell] = f"budget: {exc}"
    return cert


def _one_length(g: Graph, ell: int, params: PipelineParams, prof: ConditionProfile, cert: Certificate) -> None:
    n, alpha = g.n, prof.alpha
    if not cert.hypothesis:
        c = _dfs(g, ell, params.dfs_budget)
        if c is None:
            cert.missing.append(ell)
        else:
            cert.add(g, ell, c, PLAIN_DFS)
        return
    if ell == n:
        try:
            cert.add(g, ell, ce_hamilton(g, profile=prof), HAMILTON)
            return
        except PancyclicError as exc:
            cert.notes[ell] = f"{type(exc).__name__}: {exc}"
    elif n >= 4 * alpha * alpha:
        c = _dfs(g, ell, params.dfs_budget)
        if c is None:
            cert.missing.append(ell)
        else:
            cert.add(g, ell, c, EXTERNAL)
        return
    else:
        name, inside = route_for(n, alpha, ell, params.delta)
        try:
            res: RangeResult = _RANGES[name](g, ell, params, profile=prof)
            route = res.route if inside or res.fallback else f"{OUT_OF_WINDOW}:{res.route}"
            if res.stall:
                cert.notes[ell] = res.stall
            cert.add(g, ell, res.cycle, route)
            return
        except ConstructionStall as exc:
            if exc.report.get("exhaustive"):
                cert.missing.append(ell)
                return
            cert.notes[ell] = f"{type(exc).__name__}: {exc}"
        except PancyclicError as exc:
            cert.notes[ell] = f"{type(exc).__name__}: {exc}"
    c = _dfs(g, ell, params.dfs_budget)
    if c is None:
        cert.missing.append(ell)
    else:
        cert.add(g, ell, c, FALLBACK_DFS)


def cycle_of_length(
    g: Graph, ell: int, params: PipelineParams = PipelineParams(), profile: Optional[ConditionProfile] = None
) -> Optional[tuple[OrientedCycle, str]]:
    """One length through the same dispatch as :func:`certify_pancyclic`; None if absent."""
    if not 3 <= ell <= g.n:
        raise PreconditionError(f"length {ell} outside [3, {g.n}]")
    prof = profile or compute_profile(g)
    cert = Certificate(prof)
    _one_length(g, ell, params, prof, cert)
    if ell in cert.cycles:
        return cert.cycles[ell], cert.provenance[ell]
    return None
