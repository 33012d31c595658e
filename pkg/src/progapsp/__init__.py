"""Progressive sampling of canonical shortest-path trees.

Computes exact distances for every vertex pair whose shortest path
centrality is at least ``epsilon`` and an ``epsilon``-accurate estimate of
that centrality, each with probability at least ``1 - delta``.
"""

from progapsp.graph import Graph, GraphFormatError, parse_edge_list, serialize_edge_list, validate_connected
from progapsp.sssp import ShortestPathTree, dijkstra_canonical, max_hop_levels
from progapsp.accumulate import PairTable, TreeStore, ValueHistogram, accumulate_tree, reconstruct_path
from progapsp.bounds import (
    epsilon_net_size,
    epsilon_sample_size,
    hoeffding_union_size,
    initial_sample_size,
    vc_dimension_bound,
    vertex_diameter_bound,
)
from progapsp.rademacher import eta_bound, massart_w, minimize_w
from progapsp.engine import EstimationResult, RunConfig, RunReport, SampleSchedule, next_sample_size, run
from progapsp.oracle import ExactTables, compare, exact_apsp, exact_centrality

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphFormatError",
    "parse_edge_list",
    "serialize_edge_list",
    "validate_connected",
    "ShortestPathTree",
    "dijkstra_canonical",
    "max_hop_levels",
    "PairTable",
    "TreeStore",
    "ValueHistogram",
    "accumulate_tree",
    "reconstruct_path",
    "epsilon_net_size",
    "epsilon_sample_size",
    "hoeffding_union_size",
    "initial_sample_size",
    "vc_dimension_bound",
    "vertex_diameter_bound",
    "eta_bound",
    "massart_w",
    "minimize_w",
    "EstimationResult",
    "RunConfig",
    "RunReport",
    "SampleSchedule",
    "next_sample_size",
    "run",
    "ExactTables",
    "compare",
    "exact_apsp",
    "exact_centrality",
]
