"""Knit existence in small graphs: exact solver, proof-guided local search,
minimum-degree verification harness and the sharpness construction."""

from .graphs import (
    Graph,
    TerminalTree,
    VertexSet,
    bits,
    components,
    is_connected,
    mask_of,
    neighbors_in,
    terminal_spanning_tree,
)
from .enumeration import bell_number, ksubsets, pairings, partition_shapes, set_partitions
from .formats import (
    FormatError,
    graph_to_edgelist,
    graph_to_graph6,
    loads_graphs,
    parse_edgelist,
    parse_graph6,
)
from .solver import (
    Knit,
    KnitInstance,
    find_km_knit_witness,
    is_k_knitted,
    is_k_linked,
    is_km_knit,
    min_degree_threshold,
    solve_knit,
    verify_knit,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "TerminalTree",
    "VertexSet",
    "bits",
    "components",
    "is_connected",
    "mask_of",
    "neighbors_in",
    "terminal_spanning_tree",
    "bell_number",
    "ksubsets",
    "pairings",
    "partition_shapes",
    "set_partitions",
    "FormatError",
    "graph_to_edgelist",
    "graph_to_graph6",
    "loads_graphs",
    "parse_edgelist",
    "parse_graph6",
    "Knit",
    "KnitInstance",
    "find_km_knit_witness",
    "is_k_knitted",
    "is_k_linked",
    "is_km_knit",
    "min_degree_threshold",
    "solve_knit",
    "verify_knit",
]
