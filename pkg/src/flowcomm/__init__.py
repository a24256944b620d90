"""Exact decisions about suspension flows of hyperbolic torus
automorphisms: topological equivalence (integer conjugacy via
canonical RL words), topological commensurability (matching power
traces, squarefree discriminant invariant, explicit covering
certificates), and almost-commensurability chains reaching the
geodesic flows of hyperbolic surfaces and (2,3,n) triangle orbifolds.

All arithmetic is exact over arbitrary-precision integers and
rationals. Every positive decision is backed by a certificate that an
independent verifier re-checks from scratch.
"""

__version__ = "0.1.0"

from .errors import (
    ComputationLimit,
    DocumentError,
    ExponentMismatch,
    FactorizationLimit,
    FlowcommError,
    InvalidGenus,
    NoNonsingularIntertwiner,
    NotHyperbolic,
    NotUnimodular,
    SingularBasis,
    StepLimitExceeded,
    TraceMismatch,
)
from .linalg import (
    HyperbolicMatrix,
    Lattice2,
    Mat2,
    enumerate_sublattices,
    hnf,
    intertwiner_lattice,
    lattice_image,
    mat_mul,
    mat_pow,
)
from .conjugacy import (
    L,
    R,
    EquivalenceVerdict,
    RLWord,
    are_equivalent,
    brute_force_conjugator,
    canonical_form,
    evaluate_word,
    rl_word,
)
from .commensurability import (
    CommensurabilityCertificate,
    CommensurabilityVerdict,
    TraceSequence,
    are_commensurable,
    build_certificate,
    find_intertwiner,
    squarefree_part,
    stabilization_exponent,
    trace_power,
    verify_certificate,
)
from .models import (
    ALMOST_EQUIVALENCE,
    BIRKHOFF_SECTION_23N,
    COMMENSURABILITY,
    GHYS_HASHIGUCHI,
    ChainCertificate,
    ChainLink,
    GeodesicCommonCover,
    GeodesicOrbifold,
    GeodesicSurface,
    Suspension,
    almost_commensurability_chain,
    common_cover_genus,
    genus_model_matrix,
    orbifold_common_cover,
    orbifold_euler_characteristic,
    orbifold_model_matrix,
    verify_chain,
)

__all__ = [
    "__version__",
    "FlowcommError",
    "NotHyperbolic",
    "InvalidGenus",
    "SingularBasis",
    "NotUnimodular",
    "TraceMismatch",
    "ExponentMismatch",
    "DocumentError",
    "ComputationLimit",
    "StepLimitExceeded",
    "FactorizationLimit",
    "NoNonsingularIntertwiner",
    "Mat2",
    "HyperbolicMatrix",
    "Lattice2",
    "mat_mul",
    "mat_pow",
    "hnf",
    "lattice_image",
    "enumerate_sublattices",
    "intertwiner_lattice",
    "R",
    "L",
    "RLWord",
    "EquivalenceVerdict",
    "evaluate_word",
    "canonical_form",
    "rl_word",
    "are_equivalent",
    "brute_force_conjugator",
    "TraceSequence",
    "CommensurabilityCertificate",
    "CommensurabilityVerdict",
    "trace_power",
    "squarefree_part",
    "are_commensurable",
    "find_intertwiner",
    "stabilization_exponent",
    "build_certificate",
    "verify_certificate",
    "GHYS_HASHIGUCHI",
    "BIRKHOFF_SECTION_23N",
    "ALMOST_EQUIVALENCE",
    "COMMENSURABILITY",
    "Suspension",
    "GeodesicSurface",
    "GeodesicOrbifold",
    "GeodesicCommonCover",
    "ChainLink",
    "ChainCertificate",
    "orbifold_model_matrix",
    "genus_model_matrix",
    "orbifold_euler_characteristic",
    "common_cover_genus",
    "orbifold_common_cover",
    "almost_commensurability_chain",
    "verify_chain",
]
