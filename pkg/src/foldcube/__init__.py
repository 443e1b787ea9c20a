"""Folded-hypercube perfect-matching toolkit.

Builds Q_n and FQ_n, enumerates and samples perfect matchings, and decides
whether FQ_n minus a matching is a hypercube, with explicit certificates or
small refutation witnesses.
"""

from foldcube.errors import (
    EdgeNotPresent,
    FoldcubeError,
    MatchingFormatError,
    NoPerfectMatching,
    NotAnFqEdge,
    NotAPerfectMatching,
    NotMixed,
    ResourceGuardExceeded,
    VerificationError,
)
from foldcube.isomorphism import (
    CommonNeighborViolation,
    FourCycleWitness,
    IsoResult,
    Labeling,
    StructuralMismatch,
    brute_force_isomorphic,
    find_noniso_witness,
    phi_map,
    recognize_hypercube,
    remove_matching,
    verify_isomorphism,
)
from foldcube.matching import (
    AllComplementary,
    Matching,
    Mixed,
    SingleDimension,
    classify_matching,
    count_perfect_matchings,
    enumerate_perfect_matchings,
    is_perfect_matching,
    sample_perfect_matching,
)
from foldcube.topology import (
    Complementary,
    Dimensional,
    Graph,
    GraphKind,
    build_folded_hypercube,
    build_hypercube,
    common_neighbors,
    complementary_class,
    dimension_class,
    distance,
    edge_class,
    edge_distance,
)

__version__ = "0.1.0"

__all__ = [
    "AllComplementary",
    "CommonNeighborViolation",
    "Complementary",
    "Dimensional",
    "EdgeNotPresent",
    "FoldcubeError",
    "FourCycleWitness",
    "Graph",
    "GraphKind",
    "IsoResult",
    "Labeling",
    "Matching",
    "MatchingFormatError",
    "Mixed",
    "NoPerfectMatching",
    "NotAPerfectMatching",
    "NotAnFqEdge",
    "NotMixed",
    "ResourceGuardExceeded",
    "SingleDimension",
    "StructuralMismatch",
    "VerificationError",
    "brute_force_isomorphic",
    "build_folded_hypercube",
    "build_hypercube",
    "classify_matching",
    "common_neighbors",
    "complementary_class",
    "count_perfect_matchings",
    "dimension_class",
    "distance",
    "edge_class",
    "edge_distance",
    "enumerate_perfect_matchings",
    "find_noniso_witness",
    "is_perfect_matching",
    "phi_map",
    "recognize_hypercube",
    "remove_matching",
    "sample_perfect_matching",
    "verify_isomorphism",
]
