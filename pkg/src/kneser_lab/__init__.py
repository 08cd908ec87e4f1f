"""Partitions of k-subsets into r-wise intersecting families.

Construct the tight partition, generate Kneser-type hypergraphs and their
stable/constrained variants, certify everything with independent verifiers,
and compute partition and chromatic numbers exactly by search.
"""

from .constructions import (
    FORMAT_TAG,
    BlowupMap,
    ColoringCertificate,
    PartitionCertificate,
    blow_up,
    build_tight_partition,
    certificate_from_dict,
    check_stable_embedding,
    tail_size,
    tight_bound,
)
from .errors import (
    CapExceeded,
    EmptyInput,
    InadmissibleParams,
    InstanceTooLarge,
    InvalidCertificate,
    InvalidParams,
    InvalidPartSpec,
    KneserLabError,
    LengthMismatch,
    MalformedCertificate,
)
from .kneser import (
    Hypergraph,
    PartSpec,
    SizeLimits,
    build_kneser_hypergraph,
    build_partition_constrained,
    build_stable_subhypergraph,
    formula_chi,
    hypergraph_from_dict,
    hypergraph_to_dict,
)
from .setsys import (
    DEFAULT_GROUND_CAP,
    GroundParams,
    KSubset,
    SetFamily,
    colex_rank,
    colex_unrank,
    common_intersection,
    cyclic_distance,
    enumerate_k_subsets,
    is_s_stable,
)
from .solve import (
    BOUNDS,
    EXACT,
    INFEASIBLE,
    TIMEOUT,
    ConflictHypergraph,
    SolveBudget,
    SolveResult,
    brute_force_oracle,
    build_conflict_hypergraph,
    chromatic_number,
    min_partition_number,
)
from .verify import (
    Report,
    Violation,
    check_edges_pairwise_disjoint,
    is_r_wise_intersecting,
    verify_coloring,
    verify_coloring_certificate,
    verify_partition_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "BOUNDS",
    "BlowupMap",
    "CapExceeded",
    "ColoringCertificate",
    "ConflictHypergraph",
    "DEFAULT_GROUND_CAP",
    "EXACT",
    "EmptyInput",
    "FORMAT_TAG",
    "GroundParams",
    "Hypergraph",
    "INFEASIBLE",
    "InadmissibleParams",
    "InstanceTooLarge",
    "InvalidCertificate",
    "InvalidParams",
    "InvalidPartSpec",
    "KSubset",
    "KneserLabError",
    "LengthMismatch",
    "MalformedCertificate",
    "PartSpec",
    "PartitionCertificate",
    "Report",
    "SetFamily",
    "SizeLimits",
    "SolveBudget",
    "SolveResult",
    "TIMEOUT",
    "Violation",
    "blow_up",
    "brute_force_oracle",
    "build_conflict_hypergraph",
    "build_kneser_hypergraph",
    "build_partition_constrained",
    "build_stable_subhypergraph",
    "build_tight_partition",
    "certificate_from_dict",
    "check_edges_pairwise_disjoint",
    "check_stable_embedding",
    "chromatic_number",
    "colex_rank",
    "colex_unrank",
    "common_intersection",
    "cyclic_distance",
    "enumerate_k_subsets",
    "formula_chi",
    "hypergraph_from_dict",
    "hypergraph_to_dict",
    "is_r_wise_intersecting",
    "is_s_stable",
    "min_partition_number",
    "tail_size",
    "tight_bound",
    "verify_coloring",
    "verify_coloring_certificate",
    "verify_partition_certificate",
]
