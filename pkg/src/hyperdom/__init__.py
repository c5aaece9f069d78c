"""Directed p-domination in oriented r-uniform hypergraphs."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    FirstMomentCertificate,
    asymptotic_lower_constant,
    certified_lower,
    chi_bound_thm3,
    cover_bound,
    first_moment_certificate,
    first_moment_certifies,
    first_moment_expectation_log,
    first_moment_lower_bound,
    gpl_closed_form,
    gpl_integral_bound,
    upper_bound_thm2i,
)
from .coloring import (
    Coloring,
    chromatic_number_exact,
    clique_number,
    greedy_complement_coloring,
    independence_number,
    is_proper,
)
from .domination import (
    DominationCertificate,
    SolveStats,
    check_certificate,
    gamma_p_undirected,
    greedy_gpl,
    is_directed_p_dominating,
    is_p_dominating_undirected,
    min_directed_dominating,
    undominatable_core,
)
from .extremal import (
    EnumerationRefused,
    ExtremalResult,
    SearchConfig,
    gamma_upper_exact,
    gamma_upper_search,
    verify_eq1_monotonicity,
)
from .hypergraph import (
    Hypergraph,
    complement,
    complete_hypergraph,
    induced_subhypergraph,
    random_hypergraph,
)
from .orientation import (
    Orientation,
    directed_degree,
    directed_edge_set,
    directed_neighborhood,
    max_directed_degree,
    n_arrow,
    random_orientation,
)
