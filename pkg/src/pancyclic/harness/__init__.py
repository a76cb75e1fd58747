"""Oracles, enumeration, the counterexample hunt and lemma runners."""

from .enumerate import enumerate_graphs, graph_from_code, hypothesis_codes, screen
from .hunt import HuntReport, hunt, hunt_graphs
from .lemmas import LEMMAS, LemmaReport, lemma_test
from .oracles import brute_find_cycle, count_cycles, is_cycle, is_pancyclic_brute

__all__ = [
    "LEMMAS",
    "HuntReport",
    "LemmaReport",
    "brute_find_cycle",
    "count_cycles",
    "enumerate_graphs",
    "graph_from_code",
    "hunt",
    "hunt_graphs",
    "hypothesis_codes",
    "is_cycle",
    "is_pancyclic_brute",
    "lemma_test",
    "screen",
]
