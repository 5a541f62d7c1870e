"""Constructive total coloring of 1-planar graphs with r + 2 colors, plus a discharging auditor."""

from .coloring import (
    TotalColoring,
    color_even_cycle_from_lists,
    exact_total_chromatic_number,
    find_total_coloring,
    verify_total_coloring,
)
from .discharging import audit, decompose_clusters, gamma, run_discharging, solve_cluster_program
from .extend import (
    ExtensionFailed,
    ListTooSmall,
    NoConfigurationFound,
    ReductionTrace,
    extend_alternating_cycle,
    extend_light_edge,
    extend_local_config,
    total_color,
)
from .generate import GeneratorConfig, generate_random_1planar
from .graph_core import (
    DrawingError,
    Face,
    Graph,
    OnePlanarDrawing,
    ValidationReport,
    faces,
    parse_drawing,
    serialize_drawing,
    underlying_graph,
    validate_drawing,
)
from .structure import (
    Configuration,
    Kind,
    check_embedding_lemmas,
    find_alternating_cycle,
    find_double_triangle_4_vertex,
    find_light_edge,
    find_triangular_3_vertex,
)

__version__ = "0.1.0"

__all__ = [
    "Configuration",
    "DrawingError",
    "ExtensionFailed",
    "Face",
    "GeneratorConfig",
    "Graph",
    "Kind",
    "ListTooSmall",
    "NoConfigurationFound",
    "OnePlanarDrawing",
    "ReductionTrace",
    "TotalColoring",
    "ValidationReport",
    "audit",
    "check_embedding_lemmas",
    "color_even_cycle_from_lists",
    "decompose_clusters",
    "exact_total_chromatic_number",
    "extend_alternating_cycle",
    "extend_light_edge",
    "extend_local_config",
    "faces",
    "find_alternating_cycle",
    "find_double_triangle_4_vertex",
    "find_light_edge",
    "find_total_coloring",
    "find_triangular_3_vertex",
    "gamma",
    "generate_random_1planar",
    "parse_drawing",
    "run_discharging",
    "serialize_drawing",
    "solve_cluster_program",
    "total_color",
    "underlying_graph",
    "validate_drawing",
    "verify_total_coloring",
]
