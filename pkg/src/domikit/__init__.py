"""Signed domination functions of multistate monotone systems.

The signed domination of a binary structure, the number of odd
formations minus even formations of its minimal path sets, extends to
each level of a multistate monotone system and carries its exact
reliability: P(phi >= k) is the domination expansion evaluated at the
component survival probabilities.  This package computes the invariant
several independent ways (formation counting, Mobius inversion on the
join closure, a full-lattice subset formula, pivotal decomposition, an
associated binary reduction) and by closed forms for threshold systems,
matroid systems and two-terminal flow networks.
"""

from .errors import (
    CoherenceError,
    ComplexityGuardError,
    DegenerateSystemError,
    DimensionError,
    DistributionError,
    DomainError,
    DomikitError,
    GraphError,
    InvalidGeneratorError,
    ParseError,
    ValidationError,
)
from .poset import (
    DominationTable,
    JoinClosure,
    Relation,
    Vector,
    compare,
    domination_by_closure_mobius,
    domination_by_formations,
    formations,
    join,
    join_closure,
    leq,
    mobius_on_closure,
    validate_generators,
)
from .systems import (
    ComponentDistribution,
    LevelSystem,
    MultistateSystem,
    RelevanceReport,
    StateSpace,
    check_monotone,
    evaluate_from_paths,
    evaluate_hilbert,
    hilbert_numerator,
    inclusion_exclusion_eval,
    minimal_path_vectors,
    path_vector_system,
    relevance_report,
    reliability_enumerate,
    reliability_from_domination,
    restrict,
    sum_system,
    table_system,
)
from .domination import (
    BinaryStructure,
    associated_binary,
    associated_binary_at,
    binary_signed_domination,
    delta_at,
    domination_via_binary,
    mobius_product,
    pivotal_domination,
    signed_domination,
)
from .matroid import (
    CircuitValidation,
    Matroid,
    MatroidSystemLink,
    beta_number,
    crapo_beta,
    cycle_circuits,
    domination_from_beta,
    domination_invariant_recursion,
    graphic_matroid,
    link_structure,
    matroid_system_paths,
    structure_from_rank,
    threshold_domination,
    uniform_matroid,
    validate_circuits,
)
from .network import (
    Edge,
    FlowNetwork,
    associated_binary_network,
    connectivity_thresholds,
    directed_network_domination,
    find_directed_cycle,
    max_flow,
    minimal_cut_sets,
    network,
    network_system,
    reduces_to_connectivity,
    relevant_edges,
    simple_path_sets,
    structure_min_cut,
)
from .documents import (
    SystemDocument,
    document_to_dict,
    parse_system,
    parse_system_dict,
    serialize_system,
)

__version__ = "0.1.0"
