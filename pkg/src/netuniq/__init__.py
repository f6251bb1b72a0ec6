"""netuniq: node re-identification risk in networks via neighborhood uniqueness."""

from .graph import (
    Graph,
    SummaryStats,
    load_edge_list,
    load_edge_list_file,
    neighborhood,
    summary_stats,
    triangle_count,
    triangles_per_node,
)
from .canon import are_isomorphic_oracle, certificate, certificate_from_edges
from .uniqueness import (
    UniquenessReport,
    degree_uniqueness,
    neighborhood_uniqueness,
    nonempty_fraction,
    occurrence_frequencies,
    uniqueness_report,
)
from .models import ModelSpec, calibrated_radius, gen_er, gen_rgg, gen_ws, generate
from .er_theory import (
    ErCurve,
    argmax_degree_uniqueness,
    degree_pmf,
    er_curve,
    expected_degree_uniqueness,
    expected_nonempty_fraction,
    nonempty_probability_given_degree,
)
from .sweep import (
    BoundaryFit,
    BracketingError,
    SearchConfig,
    SearchResult,
    UniquenessMap,
    boundary_search,
    boundary_search_fn,
    fit_boundary_line,
    model_sampler,
    uniqueness_at,
    uniqueness_map,
)
from .sampling import (
    SamplingPlan,
    SamplingReport,
    estimate_degree,
    estimate_triangles,
    sample_edges,
    sampling_report,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "SummaryStats",
    "load_edge_list",
    "load_edge_list_file",
    "neighborhood",
    "summary_stats",
    "triangle_count",
    "triangles_per_node",
    "are_isomorphic_oracle",
    "certificate",
    "certificate_from_edges",
    "UniquenessReport",
    "degree_uniqueness",
    "neighborhood_uniqueness",
    "nonempty_fraction",
    "occurrence_frequencies",
    "uniqueness_report",
    "ModelSpec",
    "calibrated_radius",
    "gen_er",
    "gen_rgg",
    "gen_ws",
    "generate",
    "ErCurve",
    "argmax_degree_uniqueness",
    "degree_pmf",
    "er_curve",
    "expected_degree_uniqueness",
    "expected_nonempty_fraction",
    "nonempty_probability_given_degree",
    "BoundaryFit",
    "BracketingError",
    "SearchConfig",
    "SearchResult",
    "UniquenessMap",
    "boundary_search",
    "boundary_search_fn",
    "fit_boundary_line",
    "model_sampler",
    "uniqueness_at",
    "uniqueness_map",
    "SamplingPlan",
    "SamplingReport",
    "estimate_degree",
    "estimate_triangles",
    "sample_edges",
    "sampling_report",
    "__version__",
]
