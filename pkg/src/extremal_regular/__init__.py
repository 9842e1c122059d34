"""Exact extremal counting on regular graphs: homomorphisms, independent sets,
colourings and matchings, with machine-checkable bounds and conjecture scans."""

from .canon import canonical_form, canonical_graph, is_isomorphic
from .counting import (
    CountPolynomial,
    bigraph_hom_count,
    hom_count,
    independence_polynomial,
    matching_polynomial,
    neighbor_occupancy_distribution,
    occupancy_fraction,
    occupancy_lp_optimum,
    occupancy_lp_solution,
    perfect_matchings,
    potts_internal_energy,
    potts_polynomial,
)
from .enumeration import FamilySpec, all_graphs, family_graphs, regular_graphs
from .extremal import (
    BoundReport,
    HypothesisError,
    check_bound,
    compare_normalized,
    generalized_holder_check,
)
from .formats import ParseError, from_graph6, from_lg, to_graph6, to_lg
from .graphcore import Bigraph, Graph, GraphError, LoopGraph, analyze, parse_named
from .hunt import ScanReport, maximizer_profile, scan_conjecture
from .structure import (
    is_bipartite_swapping_target,
    is_loop_threshold,
    swap_injection,
    swap_injection_inverse,
)

__all__ = [
    "Bigraph",
    "BoundReport",
    "CountPolynomial",
    "FamilySpec",
    "Graph",
    "GraphError",
    "HypothesisError",
    "LoopGraph",
    "ParseError",
    "ScanReport",
    "all_graphs",
    "analyze",
    "bigraph_hom_count",
    "canonical_form",
    "canonical_graph",
    "check_bound",
    "compare_normalized",
    "family_graphs",
    "from_graph6",
    "from_lg",
    "generalized_holder_check",
    "hom_count",
    "independence_polynomial",
    "is_bipartite_swapping_target",
    "is_isomorphic",
    "is_loop_threshold",
    "matching_polynomial",
    "maximizer_profile",
    "neighbor_occupancy_distribution",
    "occupancy_fraction",
    "occupancy_lp_optimum",
    "occupancy_lp_solution",
    "parse_named",
    "perfect_matchings",
    "potts_internal_energy",
    "potts_polynomial",
    "regular_graphs",
    "scan_conjecture",
    "swap_injection",
    "swap_injection_inverse",
    "to_graph6",
    "to_lg",
]
