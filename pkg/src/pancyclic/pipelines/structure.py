"""Connected P5-free components and extensions that leave a forest behind."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..errors import InvariantViolation, PreconditionError
from ..graph import Graph, components, is_connected, iter_bits
from ..paths import OrientedCycle
from ..rotation import extend_into_component
from .common import has_p5, is_forest_mask

K4, TREE, APEX = "K4", "tree", "apex"


@dataclass(frozen=True)
class P5Structure:
    kind: str
    mask: int
    apex: Optional[int] = None

    def verify(self, g: Graph) -> bool:
        if self.kind == K4:
            vs = list(iter_bits(self.mask))
            return len(vs) == 4 and all(g.has_edge(a, b) for a in vs for b in vs if a < b)
        if self.kind == TREE:
            return is_forest_mask(g, self.mask)
        return self.apex is not None and self.mask >> self.apex & 1 and is_forest_mask(g, self.mask & ~(1 << self.apex))


def p5free_structure(g: Graph, mask: Optional[int] = None) -> P5Structure:
    """Classify a connected P5-free vertex set as K4, a tree, or forest plus apex."""
    mask = g.vertex_mask if mask is None else mask
    if not mask or not is_connected(g, mask):
        raise PreconditionError("vertex set must induce a nonempty connected graph")
    if has_p5(g, mask):
        raise PreconditionError("vertex set contains a path on five vertices")
    vs = list(iter_bits(mask))
    if len(vs) == 4 and all((g.adj[v] & mask).bit_count() == 3 for v in vs):
        return P5Structure(K4, mask)
    if is_forest_mask(g, mask):
        return P5Structure(TREE, mask)
    for u in sorted(vs, key=lambda v: (-(g.adj[v] & mask).bit_count(), v)):
        if is_forest_mask(g, mask & ~(1 << u)):
            return P5Structure(APEX, mask, u)
    raise InvariantViolation("P5-free connected graph with no forest apex", {"vertices": vs})


def extend_keeping_forest(g: Graph, cycle: OrientedCycle, hmask: int) -> OrientedCycle:
    """Grow ``cycle`` into the P5-free component ``hmask`` so that what is left is a nonempty forest."""
    st = p5free_structure(g, hmask)
    if st.kind == TREE:
        return cycle
    if st.kind == APEX:
        u = st.apex
        v = min(w for w in iter_bits(hmask) if w != u)
        out = extend_into_component(g, cycle, hmask, u, v)
    else:
        vs = list(iter_bits(hmask))
        out = extend_into_component(g, cycle, hmask, vs[0], vs[1])
        rest = hmask & ~out.mask
        if not is_forest_mask(g, rest):
            # a triangle is left: take a path through one corner, keep another
            tri = components(g, rest)
            comp = next(c for c in tri if not is_forest_mask(g, c))
            a, b = list(iter_bits(comp))[:2]
            out = extend_into_component(g, out, comp, a, b)
    _check_forest_extension(g, cycle, out, hmask)
    return out


def _check_forest_extension(g: Graph, before: OrientedCycle, after: OrientedCycle, hmask: int) -> None:
    rest = hmask & ~after.mask
    lost = len(before.edge_set() - after.edge_set())
    ok = (
        after.validate(g) is None
        and len(before) <= len(after) <= len(before) + 4
        and before.mask & ~after.mask == 0
        and after.mask & ~(before.mask | hmask) == 0
        and lost <= 4
        and rest != 0
        and is_forest_mask(g, rest)
    )
    if not ok:
        raise InvariantViolation(
            "forest-keeping extension broke its contract",
            {"before": list(before), "after": list(after), "component": list(iter_bits(hmask)), "lost_edges": lost},
        )
