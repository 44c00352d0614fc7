"""Minimum triangle-free 2-edge-covers and 2-edge-connected spanning subgraphs."""

from .canonical import check_semi_canonical, semi_canonicalize
from .cover import (
    Cover,
    cover_to_matching,
    deficiency,
    excess,
    is_two_edge_cover,
    matching_to_cover,
    min_cover,
    min_triangle_free_cover,
)
from .graph import (
    EdgeSet,
    Graph,
    build_graph,
    connected_components,
    decompose,
    degree_in,
    find_bridges,
    is_triangle_free,
    is_two_edge_connected,
    is_two_vertex_connected,
    parse_graph,
    format_graph,
)
from .matching import SolverBudget, TwoMatching, is_two_matching, max_triangle_free_two_matching, max_two_matching
from .pipeline import PipelineReport, bound_value, glue, lower_bound, solve, verify_solution
from .structured import structure_report

__version__ = "0.1.0"
