"""Range pipelines: long, middle and short cycle lengths, and the certifier."""

from .base import FALLBACK_DFS, RangeResult
from .certify import Certificate, certify_pancyclic, cycle_of_length, dispatch_gaps, route_for, windows
from .lower import lower_range, lower_range_odd_anchor, splice_anchor
from .middle import middle_range, mid_range_extend, n_over_alpha_paths
from .params import PipelineParams
from .shortening import shorten_path_indep, shorten_path_mindeg
from .structure import extend_keeping_forest, p5free_structure
from .upper import length3_remainder, lemma_long, upper_range

__all__ = [
    "FALLBACK_DFS",
    "Certificate",
    "PipelineParams",
    "RangeResult",
    "certify_pancyclic",
    "cycle_of_length",
    "dispatch_gaps",
    "extend_keeping_forest",
    "length3_remainder",
    "lemma_long",
    "lower_range",
    "lower_range_odd_anchor",
    "mid_range_extend",
    "middle_range",
    "n_over_alpha_paths",
    "p5free_structure",
    "route_for",
    "shorten_path_indep",
    "shorten_path_mindeg",
    "splice_anchor",
    "upper_range",
    "windows",
]
