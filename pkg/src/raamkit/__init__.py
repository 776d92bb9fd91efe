"""Word algebra and operator checks for graph products of the free monoid.

The package has three layers:

- combinatorics: `graphs` (simple graphs, cliques, complements) and
  `monoid` (normal forms, divisibility, least common right multiples)
  with exact enumeration oracles in `counting`;
- operator checks: `operators` evaluates families of commuting
  matrices, the inclusion-exclusion defect operator, and the positivity
  conditions attached to cliques and vertex neighborhoods;
- transforms: `fock` builds truncated shift models and the Cauchy and
  Poisson transforms with explicit truncation-error allowances.

Everything computes on explicit finite-dimensional instances; checks
return `CheckReport` records that serialize to JSON.
"""

from .counting import (
    alternating_cover_sum,
    cover_count_enum,
    cover_count_formula,
    level_joins,
    max_joinable_subset,
)
from .errors import (
    BadVertex,
    DimensionMismatch,
    EmptyInput,
    GraphMismatch,
    GuardExceeded,
    LevelTooLarge,
    NotAClique,
    NotDivisible,
    NotPropertyP,
    NotSquare,
    OracleAmbiguous,
    ParseError,
    RaamkitError,
    ValidationError,
)
from .fock import (
    PoissonKernelMatrix,
    TruncatedFock,
    build_fock,
    cauchy_apply,
    default_truncation,
    lambda_compressed,
    nica_covariance_check,
    poisson_compress,
    poisson_kernel,
    poisson_reproduce_check,
    poisson_transform_span,
    tail_bound,
    truncated_shift_family,
    unit_resolution_check,
    vn_certificate,
)
from .graphs import (
    Graph,
    clique_number,
    clique_number_within,
    common_neighborhood,
    complement,
    complement_components,
    complete_graph,
    complete_multipartite,
    empty_graph,
    enumerate_cliques,
    graph_from_json,
    graph_to_json,
    is_clique,
    neighbor_sets,
)
from .monoid import (
    INFINITY,
    MonoidElement,
    Side,
    ball,
    boundary_vertices,
    element_literal,
    enumerate_norm_level,
    final_vertices,
    generator,
    identity,
    initial_vertices,
    is_finite,
    join_set,
    lcm,
    lcm_oracle,
    left_divides,
    left_quotient,
    multiply,
    normal_form,
    parse_element,
)
from .operators import (
    CheckReport,
    GammaFamily,
    brehmer_clique_check,
    delta_operator,
    evaluate_word,
    family_from_json,
    family_to_json,
    key_estimate_check,
    opnorm,
    property_p_scan,
    psd_check,
    validate_family,
    weak_brehmer_check,
    zed,
)

__version__ = "0.1.0"

__all__ = [
    "BadVertex",
    "CheckReport",
    "DimensionMismatch",
    "EmptyInput",
    "GammaFamily",
    "Graph",
    "GraphMismatch",
    "GuardExceeded",
    "INFINITY",
    "LevelTooLarge",
    "MonoidElement",
    "NotAClique",
    "NotDivisible",
    "NotPropertyP",
    "NotSquare",
    "OracleAmbiguous",
    "ParseError",
    "PoissonKernelMatrix",
    "RaamkitError",
    "Side",
    "TruncatedFock",
    "ValidationError",
    "alternating_cover_sum",
    "ball",
    "boundary_vertices",
    "brehmer_clique_check",
    "build_fock",
    "cauchy_apply",
    "clique_number",
    "clique_number_within",
    "common_neighborhood",
    "complement",
    "complement_components",
    "complete_graph",
    "complete_multipartite",
    "cover_count_enum",
    "cover_count_formula",
    "default_truncation",
    "delta_operator",
    "element_literal",
    "empty_graph",
    "enumerate_cliques",
    "enumerate_norm_level",
    "evaluate_word",
    "family_from_json",
    "family_to_json",
    "final_vertices",
    "generator",
    "graph_from_json",
    "graph_to_json",
    "identity",
    "initial_vertices",
    "is_clique",
    "is_finite",
    "join_set",
    "key_estimate_check",
    "lambda_compressed",
    "lcm",
    "lcm_oracle",
    "left_divides",
    "left_quotient",
    "level_joins",
    "max_joinable_subset",
    "multiply",
    "neighbor_sets",
    "nica_covariance_check",
    "normal_form",
    "opnorm",
    "parse_element",
    "poisson_compress",
    "poisson_kernel",
    "poisson_reproduce_check",
    "poisson_transform_span",
    "property_p_scan",
    "psd_check",
    "tail_bound",
    "truncated_shift_family",
    "unit_resolution_check",
    "validate_family",
    "vn_certificate",
    "weak_brehmer_check",
    "zed",
]
