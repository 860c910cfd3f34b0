"""framelab: a finite-dimensional toolkit for operator-valued frame
sequences and fusion frames, their duals, subspace gaps, and verified
perturbation bounds."""

from .errors import (
    DegenerateGavrutaDual,
    DegenerateInput,
    FramelabError,
    InvalidDualParam,
    InvalidInput,
    NotAFrame,
    NotAFrameSequence,
    NotApplicable,
    RankError,
    SingularRestriction,
)
from .fusion import (
    FFDualCheck,
    FusionSequence,
    TightDecomposition,
    alternate_ffdual,
    canonical_ffdual,
    canonical_ffdual_witness,
    canonical_gavruta_family,
    desiderata_suite,
    ffdual_characterize,
    ffdual_from_gavruta,
    ffdual_verify,
    fusion_frame_operator,
    fusion_to_ov,
    gavruta_is_dual,
    tight_orthogonal_decomposition,
)
from .gap import (
    GapLemmaReport,
    GapReport,
    bounded_below_consequences,
    gap_delta,
    gap_Delta,
    gap_range_bound,
    inf_cosine,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    adjoint,
    kernel_basis,
    min_nonzero_sv,
    op_norm,
    proj,
    range_basis,
    restricted_inverse,
)
from .ovframe import (
    FrameReport,
    OVSequence,
    analysis_operator,
    canonical_dual,
    classify,
    dual_diagnostics,
    dual_param_space,
    frame_operator,
    frame_subspace,
    from_vectors,
    is_dual,
    make_dual,
    to_vectors,
)
from .perturb import (
    BestApproxReport,
    BijectionReport,
    DualDeviationReport,
    FusionStabilityReport,
    MixedInverseReport,
    PerturbReport,
    TransformedBoundsReport,
    best_approx_check,
    canonical_dual_deviation,
    difference_decomposition_check,
    dual_bijection,
    fusion_stability,
    mu,
    perturbation_report,
    pq_projection_bound,
    r_lambda_suite,
    stable_dual,
    transformed_fusion_bounds,
)

__version__ = "0.1.0"
