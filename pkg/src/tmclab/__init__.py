"""Total monochromatic connection number: exact solving, bounds, theorem
checks, and random-graph threshold experiments."""

__version__ = "0.1.0"

from ._kernels import BACKEND
from .coloring import TotalColoring, TreeFamily, construct_theorem1, decompose, family_to_coloring, verify_tmc, waste
from .graph import Graph, MultipartiteSpec, complement, enumerate_connected_graphs, generate, is_isomorphic, metrics
from .graphio import emit_graph6, parse_graph6
from .solver import TmcOutcome, tmc_exact, tmc_lower_bound, tmc_oracle, tmc_upper_bound
from .spanning import SpanningStats, leaf_lower_bound, spanning_stats
from .theorems import characterize_large, characterize_small, classify, sweep_crosscheck

__all__ = [
    "BACKEND", "Graph", "MultipartiteSpec", "SpanningStats", "TmcOutcome", "TotalColoring", "TreeFamily",
    "characterize_large", "characterize_small", "classify", "complement", "construct_theorem1", "decompose",
    "emit_graph6", "enumerate_connected_graphs", "family_to_coloring", "generate", "is_isomorphic",
    "leaf_lower_bound", "metrics", "parse_graph6", "spanning_stats", "sweep_crosscheck", "tmc_exact",
    "tmc_lower_bound", "tmc_oracle", "tmc_upper_bound", "verify_tmc", "waste",
]
