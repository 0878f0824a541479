"""Numerical calculus for finite quantum groups given by multiplicative
unitaries: pentagon verification, bicharacters and their category,
conversions among the homomorphism notions, coactions and the functors
they induce, and classical group examples with Fourier cross-checks.
"""

from .errors import (
    AlgebraNotClosed,
    BicharacterViolation,
    CalculusError,
    CoactionViolation,
    DimensionMismatch,
    ExtractionFailure,
    HopfHomViolation,
    NotAbelian,
    NotAGroup,
    NotKacType,
    NotManageable,
    ParseError,
    PentagonViolation,
    RangeViolation,
    RecoveryFailure,
    SolveFailure,
    SourceTargetMismatch,
)
from .tensorleg import (
    Functional,
    LegSpace,
    SpanMap,
    apply_map_to_leg,
    embed_on_legs,
    extract_trivial_legs,
    flip_unitary,
    frob,
    intertwiner_space,
    kron,
    membership_residual,
    orthonormal_basis,
    permute_legs,
    residual_between,
    slice_leg,
    span_map_from_pairs,
    unitarity_defect,
    vec,
    unvec,
)
from .qgroup import (
    CLOSURE_TOL,
    EQUATION_TOL,
    PENTAGON_TOL,
    FiniteQuantumGroup,
    ManageabilityWitness,
    build_from_unitary,
    coassociativity_residual,
    coinvariant_dimension,
    dual_qg,
    manageability_witness,
    transpose_qg,
    unitary_antipode,
)
from .bicharacter import (
    Bicharacter,
    bicharacter_residuals,
    check_R_invariance,
    check_bicharacter,
    compose,
    dual_bicharacter,
    from_hopf_hom,
    identity,
)
from .homviews import (
    HopfHom,
    LeftQGHom,
    RightQGHom,
    bicharacter_from_left,
    bicharacter_from_right,
    check_hopf_hom,
    check_left_hom,
    check_left_right_compatibility,
    check_right_hom,
    dual_hopf_relation,
    left_from_bicharacter,
    right_from_bicharacter,
)
from .coactions import (
    Coaction,
    Corepresentation,
    check_coaction,
    check_corepresentation,
    coactions_agree,
    compose_functors_check,
    comultiplication_coaction,
    conjugation_coaction,
    induce_coaction,
    pushforward_corep,
    trivial_coaction,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    build_group,
    character_group,
    compose_homs,
    cyclic_group,
    dihedral_group_4,
    fourier_dual_witness,
    group_hom,
    hom_to_hopf,
    identity_hom,
    product_group,
    qg_from_group,
    quaternion_group,
    standard_corpus,
    symmetric_group_3,
    translation_matrix,
    trivial_group,
    trivial_hom,
)

__version__ = "0.1.0"
