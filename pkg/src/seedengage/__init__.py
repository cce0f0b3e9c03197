"""Seed selection for local user engagement in graphs."""

from .graph import (
    DistanceMap,
    EdgeListParseError,
    Graph,
    connected_component,
    generate_synthetic,
    induced_subgraph,
    load_edge_list,
    r_neighbors,
    write_edge_list,
)
from .hyperanf import HllCounter, exact_neighborhood_function, hyperanf, select_fca
from .kcore import core_decomposition, k_core
from .seg import EngagementState, Seg, compute_seg, engagement, engagement_gain
from .selection import (
    CandidateQueue,
    CombinationCapError,
    SelectionResult,
    brute_force_opt,
    select_ba,
    select_baseline,
    select_era,
)

__version__ = "0.1.0"
