"""Balanced clique subdivisions TK_k^(ell) in graphs.

The package extracts sublinear expanders, builds the structural gadgets
(hubs, units, expansions, adjusters, octopuses) used to route exact-length
vertex-disjoint paths, and emits machine-checkable certificates for every
subdivision it finds.
"""

from .assemble import (
    Overrides,
    PipelineOutcome,
    PipelineTrace,
    ResolvedConstants,
    RunConfig,
    derive_config,
    find_balanced_subdivision,
    top_level,
)
from .certify import (
    BudgetExhausted,
    NotFound,
    SubdivisionCertificate,
    best_balanced_clique,
    brute_force_subdivision,
    verify_subdivision,
)
from .connect import PathWitness, check_path, diameter_bound, robust_budget, short_connect
from .drc import (
    DrcParams,
    dense_tk2,
    drc_feasible,
    drc_select,
    kst_degree_bound,
    robust_degree_or_tk2,
)
from .expander import (
    ExpanderVerdict,
    ExpansionProfile,
    ExtractionResult,
    BipartiteExpander,
    epsilon_of,
    extract_bipartite_expander,
    extract_expander,
    kst_free_profile_transform,
    verify_expander,
)
from .gadgets import (
    Adjuster,
    Expansion,
    Hub,
    Octopus,
    Unit,
    adjuster_length_menu,
    build_hub,
    build_octopus,
    build_simple_adjuster,
    build_unit,
    grow_expansion,
    link_adjusters,
    trim_expansion,
    validate_adjuster,
    validate_expansion,
    validate_hub,
    validate_octopus,
    validate_unit,
)
from .generators import (
    bipartite_gnp,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    from_edge_list,
    gnp,
    hypercube,
    incidence_plane,
    kdd,
    path_graph,
    to_edge_list,
)
from .graph import (
    DegreeStats,
    Graph,
    average_degree,
    bipartite_half,
    degree_stats,
    external_neighborhood,
    min_degree_peel,
)
from .outcomes import (
    BuildFailure,
    Clause,
    DensityTooLowError,
    EmptyGraphError,
    InvalidArgumentError,
    InvalidVertexError,
    TooLargeError,
    ValidationReport,
    failed,
)
from .router import (
    LengthWindow,
    connect_pair_with_length,
    connect_with_length,
    exact_path_in_region,
    realize_exact_length,
    simple_path_lengths,
)

__version__ = "0.1.0"

__all__ = [
    "Adjuster",
    "BipartiteExpander",
    "BudgetExhausted",
    "BuildFailure",
    "Clause",
    "DegreeStats",
    "DensityTooLowError",
    "DrcParams",
    "EmptyGraphError",
    "ExpanderVerdict",
    "Expansion",
    "ExpansionProfile",
    "ExtractionResult",
    "Graph",
    "Hub",
    "InvalidArgumentError",
    "InvalidVertexError",
    "LengthWindow",
    "NotFound",
    "Octopus",
    "Overrides",
    "PathWitness",
    "PipelineOutcome",
    "PipelineTrace",
    "ResolvedConstants",
    "RunConfig",
    "SubdivisionCertificate",
    "TooLargeError",
    "Unit",
    "ValidationReport",
    "adjuster_length_menu",
    "average_degree",
    "best_balanced_clique",
    "bipartite_gnp",
    "bipartite_half",
    "brute_force_subdivision",
    "build_hub",
    "build_octopus",
    "build_simple_adjuster",
    "build_unit",
    "check_path",
    "complete_bipartite",
    "complete_graph",
    "connect_pair_with_length",
    "connect_with_length",
    "cycle_graph",
    "degree_stats",
    "dense_tk2",
    "derive_config",
    "diameter_bound",
    "drc_feasible",
    "drc_select",
    "epsilon_of",
    "exact_path_in_region",
    "external_neighborhood",
    "extract_bipartite_expander",
    "extract_expander",
    "failed",
    "find_balanced_subdivision",
    "from_edge_list",
    "gnp",
    "grow_expansion",
    "hypercube",
    "incidence_plane",
    "kdd",
    "kst_degree_bound",
    "kst_free_profile_transform",
    "link_adjusters",
    "min_degree_peel",
    "path_graph",
    "realize_exact_length",
    "robust_budget",
    "robust_degree_or_tk2",
    "short_connect",
    "simple_path_lengths",
    "to_edge_list",
    "top_level",
    "trim_expansion",
    "validate_adjuster",
    "validate_expansion",
    "validate_hub",
    "validate_octopus",
    "validate_unit",
    "verify_expander",
    "verify_subdivision",
]
