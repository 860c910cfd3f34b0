"""Perturbation analysis for operator-valued and fusion frame sequences.

Two sequences are a mu-perturbation pair when their analysis operators
differ by at most mu in operator norm. The reports in this module pit
the measured quantities (frame bounds, subspace gaps, deviations of
canonical and alternate duals) against the corresponding closed-form
bounds; every report carries an ``applicable`` flag and only asserts
its inequality when the hypotheses behind the bound actually hold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput, NotAFrameSequence, NotApplicable
from .fusion import FusionSequence, canonical_ffdual, fusion_to_ov
from .gap import gap_delta, gap_Delta
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    adjoint,
    as_matrix,
    op_norm,
    proj,
    range_basis,
    restricted_inverse,
)
from .ovframe import (
    OVSequence,
    analysis_operator,
    canonical_dual,
    check_dual_param,
    classify,
    dual_param_space,
    frame_operator,
    frame_subspace,
    make_dual,
)


def mu(A: OVSequence, B: OVSequence) -> float:
    """Operator norm distance between the analysis operators."""
    if not A.same_shape(B):
        raise InvalidInput("sequences have different shapes")
    return op_norm(analysis_operator(A) - analysis_operator(B))


@dataclass(frozen=True)
class PerturbReport:
    """Measured vs predicted data for a perturbed frame sequence.

    The gap inequalities between the frame subspaces and between the
    analysis ranges hold unconditionally; the predicted frame bounds and
    the symmetric range gap bound require mu below the square root of
    the lower bound and a frame subspace gap below one (``applicable``).
    """

    mu: float
    alpha: float
    beta: float
    span_gap_ab: float
    span_gap_ba: float
    span_gap_max: float
    span_gap_bound: float
    range_gap_directed: float
    range_gap_max: float
    range_gap_bound: float | None
    predicted_lower: float | None
    predicted_upper: float | None
    measured_lower: float
    measured_upper: float
    applicable: bool

    def checks(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> dict:
        out = {
            "span_gap_within": self.span_gap_ab <= self.span_gap_bound + tol_eq,
            "range_gap_directed_within": self.range_gap_directed
            <= self.span_gap_bound + tol_eq,
        }
        if self.applicable:
            out["bounds_bracketed"] = (
                self.measured_lower >= self.predicted_lower - tol_eq
                and self.measured_upper <= self.predicted_upper + tol_eq
            )
            out["range_gap_within"] = self.range_gap_max <= self.range_gap_bound + tol_eq
        return out

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        return all(self.checks(tol_eq).values())

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["checks"] = self.checks()
        return d


def perturbation_report(
    A: OVSequence, B: OVSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> PerturbReport:
    rep_a = classify(A, tol)
    if not rep_a.is_frame_sequence:
        raise NotAFrameSequence("reference sequence is numerically zero")
    m = mu(A, B)
    alpha, beta = rep_a.lower_bound, rep_a.bessel_bound
    sqrt_alpha = np.sqrt(alpha)

    HA = frame_subspace(A, tol)
    HB = frame_subspace(B, tol)
    span = gap_Delta(HA, HB, tol)

    TA = analysis_operator(A)
    TB = analysis_operator(B)
    ran_a = range_basis(TA, tol)
    ran_b = range_basis(TB, tol)
    range_gap = gap_Delta(ran_a, ran_b, tol)

    rep_b = classify(B, tol)
    applicable = (
        m < sqrt_alpha and span.delta_max < 1.0 - tol.tol_eq and HA.dim == HB.dim
    )

    predicted_lower = predicted_upper = range_gap_bound = None
    if applicable:
        predicted_lower = (sqrt_alpha - m) ** 2
        # Norm of the projection onto the reference span restricted to the
        # perturbed span: the directed gap to the span's complement.
        d_perp = gap_delta(HB, HA.perp())
        predicted_upper = (d_perp * np.sqrt(beta) + m) ** 2
        range_gap_bound = m / (sqrt_alpha - m)

    return PerturbReport(
        mu=m,
        alpha=alpha,
        beta=beta,
        span_gap_ab=span.delta_vw,
        span_gap_ba=span.delta_wv,
        span_gap_max=span.delta_max,
        span_gap_bound=m / sqrt_alpha,
        range_gap_directed=gap_delta(ran_a, ran_b),
        range_gap_max=range_gap.delta_max,
        range_gap_bound=range_gap_bound,
        predicted_lower=predicted_lower,
        predicted_upper=predicted_upper,
        measured_lower=rep_b.lower_bound,
        measured_upper=rep_b.bessel_bound,
        applicable=applicable,
    )


@dataclass(frozen=True)
class DualDeviationReport:
    """Deviation of dual analysis operators against a closed-form bound.

    ``lam`` is filled by the stable-dual construction (where the bound
    is the perturbation constant of the chosen dual); the canonical
    comparison leaves it None.
    """

    measured: float
    bound: float | None
    lam: float | None
    is_frame_case: bool
    mu: float
    alpha: float
    span_gap_max: float
    applicable: bool

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        if not self.applicable:
            return True
        return self.measured <= self.bound + tol_eq

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["satisfied"] = self.satisfied()
        return d


def _hypotheses(A, B, tol):
    rep = classify(A, tol)
    if not rep.is_frame_sequence:
        raise NotAFrameSequence("reference sequence is numerically zero")
    m = mu(A, B)
    alpha = rep.lower_bound
    HA = frame_subspace(A, tol)
    HB = frame_subspace(B, tol)
    delta = gap_Delta(HA, HB, tol).delta_max
    # A gap genuinely below one forces equal dimensions; insist on that
    # to keep near-one round-off from sneaking past the hypothesis.
    gap_ok = delta < 1.0 - tol.tol_eq and HA.dim == HB.dim
    frame_case = HA.dim == A.domain_dim == HB.dim
    return m, alpha, delta if gap_ok else 1.0, frame_case


def canonical_dual_deviation(
    A: OVSequence, B: OVSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> DualDeviationReport:
    """Distance between the canonical duals against the bound
    (2 mu + (2 sqrt(alpha) - mu) Delta) / (sqrt(alpha) (sqrt(alpha) - mu));
    in the frame case Delta vanishes and the bound reduces to
    2 mu / (sqrt(alpha) (sqrt(alpha) - mu)).

    Raises NotApplicable (with the partial report attached) when mu is
    not below sqrt(alpha) or the span gap is not below one.
    """
    m, alpha, delta, frame_case = _hypotheses(A, B, tol)
    sqrt_alpha = np.sqrt(alpha)
    applicable = m < sqrt_alpha and delta < 1.0
    measured = op_norm(
        analysis_operator(canonical_dual(A, tol))
        - analysis_operator(canonical_dual(B, tol))
    )
    if not applicable:
        partial = DualDeviationReport(
            measured, None, None, frame_case, m, alpha, delta, False
        )
        raise NotApplicable("perturbation hypotheses violated", report=partial)
    used_delta = 0.0 if frame_case else delta
    bound = (2 * m + (2 * sqrt_alpha - m) * used_delta) / (sqrt_alpha * (sqrt_alpha - m))
    return DualDeviationReport(measured, bound, None, frame_case, m, alpha, delta, True)


def canonical_deviation_bound(alpha: float, m: float, delta: float) -> float:
    """Closed form of the canonical dual deviation bound."""
    s = np.sqrt(alpha)
    return (2 * m + (2 * s - m) * delta) / (s * (s - m))


def stability_lambda(alpha: float, m: float, delta: float, l_norm: float) -> float:
    """Perturbation constant of the stable dual; with delta = 0 this is
    the frame case constant (mu / (sqrt(alpha) - mu)) (1/sqrt(alpha) + ||L||).
    """
    s = np.sqrt(alpha)
    return (m + (2 * s - m) * delta) / (s * (s - m)) + (m / (s - m) + delta) * l_norm


def stable_dual(
    A: OVSequence, B: OVSequence, L, tol: ToleranceConfig = DEFAULT_TOL
):
    """The dual of the perturbed sequence tracking a given dual of the
    original one.

    Projects the tracked dual's analysis operator onto the synthesis
    kernel of the perturbed sequence, which yields a valid parameter
    there; the resulting dual deviates by at most the stability
    constant. Returns (dual sequence, deviation report).
    """
    L = check_dual_param(A, L, tol)
    m, alpha, delta, frame_case = _hypotheses(A, B, tol)
    sqrt_alpha = np.sqrt(alpha)
    if not (m < sqrt_alpha and delta < 1.0):
        raise NotApplicable("perturbation hypotheses violated")

    T_dual_a = analysis_operator(make_dual(A, L, tol))
    TB = analysis_operator(B)
    HB = frame_subspace(B, tol)
    P_ker_b = np.eye(TB.shape[0], dtype=complex) - proj(range_basis(TB, tol))
    M = P_ker_b @ T_dual_a @ proj(HB)
    dual_b = make_dual(B, M, tol)

    measured = op_norm(analysis_operator(dual_b) - T_dual_a)
    used_delta = 0.0 if frame_case else delta
    lam = stability_lambda(alpha, m, used_delta, op_norm(L))
    report = DualDeviationReport(
        measured, lam, lam, frame_case, m, alpha, delta, True
    )
    return dual_b, report


@dataclass(frozen=True)
class BestApproxReport:
    """Best approximation evidence in the frame case.

    best_gap is the deviation of the stable dual, canonical_gap the
    deviation of the perturbed sequence's canonical dual from the same
    tracked dual; trial gaps over random duals must never undercut
    best_gap. The Hilbert-Schmidt projection residual compares the
    closed form of the projection onto the dual set with an independent
    basis expansion.
    """

    best_gap: float
    canonical_gap: float
    min_trial_gap: float
    trials: int
    norm_violations: int
    pointwise_violations: int
    hs_projection_residual: float

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        return (
            self.norm_violations == 0
            and self.pointwise_violations == 0
            and self.hs_projection_residual <= tol_eq
        )

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["satisfied"] = self.satisfied()
        return d


def best_approx_check(
    A: OVSequence,
    B: OVSequence,
    L,
    trials: int = 20,
    tol: ToleranceConfig = DEFAULT_TOL,
    seed: int = 0,
) -> BestApproxReport:
    """Verify that among all duals of the perturbed frame the stable dual
    is closest to the tracked dual, in norm and pointwise, and that the
    Hilbert-Schmidt projection onto the dual set has its closed form."""
    L = check_dual_param(A, L, tol)
    m, alpha, delta, frame_case = _hypotheses(A, B, tol)
    if not frame_case:
        raise NotApplicable("best approximation statement needs frames for the space")
    if not m < np.sqrt(alpha):
        raise NotApplicable("perturbation too large")

    rng = np.random.default_rng(seed)
    n = A.domain_dim
    T_dual_a = analysis_operator(make_dual(A, L, tol))
    dual_b, _ = stable_dual(A, B, L, tol)
    best_gap = op_norm(analysis_operator(dual_b) - T_dual_a)
    canonical_gap = op_norm(analysis_operator(canonical_dual(B, tol)) - T_dual_a)

    basis = dual_param_space(B, tol)
    best_diff = analysis_operator(dual_b) - T_dual_a
    norm_violations = 0
    pointwise_violations = 0
    min_trial_gap = np.inf
    for _ in range(trials):
        M = _random_param(rng, basis, analysis_operator(B).shape)
        diff = analysis_operator(make_dual(B, M, tol)) - T_dual_a
        gap = op_norm(diff)
        min_trial_gap = min(min_trial_gap, gap)
        if gap < best_gap - tol.tol_eq:
            norm_violations += 1
        for _ in range(5):
            x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            if (
                np.linalg.norm(diff @ x) ** 2
                < np.linalg.norm(best_diff @ x) ** 2 - tol.tol_eq
            ):
                pointwise_violations += 1

    # Independent check of the projection onto the affine dual set: the
    # basis expansion must agree with the synthesis kernel compression.
    TB = analysis_operator(B)
    W0 = TB @ restricted_inverse(frame_operator(B), Subspace.full(n), tol)
    X = rng.standard_normal(TB.shape) + 1j * rng.standard_normal(TB.shape)
    expansion = W0 + sum(E * np.trace(adjoint(E) @ (X - W0)) for E in basis)
    P_ker_b = np.eye(TB.shape[0], dtype=complex) - proj(range_basis(TB, tol))
    closed_form = W0 + P_ker_b @ X
    hs_residual = op_norm(expansion - closed_form)

    return BestApproxReport(
        best_gap=best_gap,
        canonical_gap=canonical_gap,
        min_trial_gap=float(min_trial_gap),
        trials=trials,
        norm_violations=norm_violations,
        pointwise_violations=pointwise_violations,
        hs_projection_residual=hs_residual,
    )


def _random_param(rng, basis, shape):
    """Random parameter from an orthonormal basis, scaled to a random
    norm in (0, 2]."""
    if not basis:
        return np.zeros(shape, dtype=complex)
    coeffs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    M = sum(c * E for c, E in zip(coeffs, basis))
    nrm = op_norm(M)
    if nrm == 0.0:
        return M
    return M * (2.0 * (1.0 - rng.random()) / nrm)


@dataclass(frozen=True)
class BijectionReport:
    param_dim_a: int
    param_dim_b: int
    residual_roundtrip_a: float
    residual_roundtrip_b: float

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        return (
            self.residual_roundtrip_a <= tol_eq and self.residual_roundtrip_b <= tol_eq
        )

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["satisfied"] = self.satisfied()
        return d


def dual_bijection(
    A: OVSequence, B: OVSequence, tol: ToleranceConfig = DEFAULT_TOL
):
    """The correspondence between the dual parameter spaces of a frame
    sequence and a sufficiently small perturbation of it.

    Forward: compress onto the perturbed synthesis kernel and span.
    Inverse: undo both compressions through the restricted projections,
    which are invertible because all relevant gaps stay below one.
    Returns (forward, inverse, report); the report carries the round
    trip residuals over the parameter space bases.
    """
    m, alpha, delta, _ = _hypotheses(A, B, tol)
    if not (m < np.sqrt(alpha) / 2 and delta < 1.0):
        raise NotApplicable("bijection requires mu below half sqrt(alpha)")

    TA = analysis_operator(A)
    TB = analysis_operator(B)
    KA = range_basis(TA, tol).perp().basis
    KB = range_basis(TB, tol).perp().basis
    BA = frame_subspace(A, tol).basis
    BB = frame_subspace(B, tol).basis
    if KA.shape[1] != KB.shape[1] or BA.shape[1] != BB.shape[1]:
        raise NotApplicable("parameter spaces have different dimensions")

    G_ker = adjoint(KB) @ KA
    G_span = adjoint(BA) @ BB
    G_ker_inv = np.linalg.inv(G_ker) if G_ker.size else G_ker
    G_span_inv = np.linalg.inv(G_span) if G_span.size else G_span

    def forward(X):
        X = as_matrix(X)
        return KB @ (adjoint(KB) @ X @ BB) @ adjoint(BB)

    def inverse(Y):
        Y = as_matrix(Y)
        return KA @ G_ker_inv @ (adjoint(KB) @ Y @ BB) @ G_span_inv @ adjoint(BA)

    basis_a = dual_param_space(A, tol)
    basis_b = dual_param_space(B, tol)
    res_a = max((op_norm(inverse(forward(E)) - E) for E in basis_a), default=0.0)
    res_b = max((op_norm(forward(inverse(F)) - F) for F in basis_b), default=0.0)
    report = BijectionReport(len(basis_a), len(basis_b), res_a, res_b)
    return forward, inverse, report


def difference_decomposition_check(
    A: OVSequence, B: OVSequence, L, M, tol: ToleranceConfig = DEFAULT_TOL
) -> float:
    """Residual of the four-term decomposition of the difference between
    two parametrized duals. Exact identity, so the residual is round-off."""
    L = check_dual_param(A, L, tol)
    M = check_dual_param(B, M, tol)
    TA = analysis_operator(A)
    TB = analysis_operator(B)
    HA = frame_subspace(A, tol)
    HB = frame_subspace(B, tol)
    PA, PB = proj(HA), proj(HB)
    Sinv_a = restricted_inverse(frame_operator(A), HA, tol)
    Sinv_b = restricted_inverse(frame_operator(B), HB, tol)
    P_ker_b = np.eye(TB.shape[0], dtype=complex) - proj(range_basis(TB, tol))
    eye = np.eye(A.domain_dim)

    R = TA @ Sinv_a + L
    lhs = (TB @ Sinv_b + M) @ PB - (R @ PA)
    rhs = (
        TB @ Sinv_b @ PB @ (adjoint(TA) - adjoint(TB)) @ R @ PA @ PB
        + TB @ Sinv_b @ PB @ (eye - PA) @ PB
        - R @ PA @ (eye - PB)
        + (M - P_ker_b @ R @ PA) @ PB
    )
    return op_norm(lhs - rhs)


def pq_projection_bound(P, Q, c: float, d: float, tol: ToleranceConfig = DEFAULT_TOL):
    """Weighted projector comparison: the distance between two orthogonal
    projections is controlled by the distance of their weighted versions
    times sqrt(1/c^2 + 1/d^2). Returns (bound, measured)."""
    P = as_matrix(P)
    Q = as_matrix(Q)
    for name, R in (("first", P), ("second", Q)):
        if R.shape[0] != R.shape[1]:
            raise InvalidInput(f"{name} argument is not square")
        if op_norm(R @ R - R) > tol.tol_eq or op_norm(R - adjoint(R)) > tol.tol_eq:
            raise InvalidInput(f"{name} argument is not an orthogonal projection")
    if c <= 0 or d <= 0:
        raise InvalidInput("weights must be positive")
    bound = np.sqrt(1.0 / c**2 + 1.0 / d**2) * op_norm(c * P - d * Q)
    return bound, op_norm(P - Q)


@dataclass(frozen=True)
class MixedInverseReport:
    """Checks around the invertible mix of a transform on a subspace and
    its inverse adjoint on the complement."""

    invertible: bool
    projection_residual: float
    sandwich_ok: bool
    sandwich_margin: float
    transfer_ok: bool
    transfer_margin: float
    samples: int

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        return (
            self.invertible
            and self.projection_residual <= tol_eq
            and self.sandwich_ok
            and self.transfer_ok
        )

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["satisfied"] = self.satisfied()
        return d


def r_lambda_suite(
    A,
    W: Subspace,
    lam: float,
    c: float,
    d: float,
    tol: ToleranceConfig = DEFAULT_TOL,
    samples: int = 64,
    seed: int = 0,
) -> MixedInverseReport:
    """Exercise the operator A P_W + lam A^{-H} P_{W perp}: invertibility,
    the projection formula for the image subspace A W, the norm sandwich
    of its inverse, and the two-sided transfer inequality obtained at
    lam = c d."""
    A = as_matrix(A)
    n = A.shape[0]
    if A.shape[1] != n or W.ambient_dim != n:
        raise InvalidInput("operator and subspace dimensions do not match")
    if lam <= 0:
        raise InvalidInput("mixing weight must be positive")
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= tol.tol_rank * s[0]:
        raise InvalidInput("operator is numerically singular")
    if c <= 0 or c > s[-1] + tol.tol_eq or d < s[0] - tol.tol_eq:
        raise InvalidInput("c, d do not sandwich the singular values")

    rng = np.random.default_rng(seed)
    A_inv_h = adjoint(np.linalg.inv(A))
    PW = proj(W)
    P_perp = np.eye(n) - PW
    R = A @ PW + lam * A_inv_h @ P_perp
    sR = np.linalg.svd(R, compute_uv=False)
    invertible = sR[-1] > tol.tol_rank * sR[0]
    R_inv = np.linalg.inv(R)

    P_AW = proj(range_basis(A @ W.basis, tol))
    projection_residual = op_norm(P_AW - adjoint(R_inv) @ PW @ adjoint(A))

    lo = min(1.0, c * d / lam) / d
    hi = max(1.0, c * d / lam) / c
    sandwich_margin = np.inf
    sandwich_ok = True
    for _ in range(samples):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        ratio = np.linalg.norm(R_inv @ x) / np.linalg.norm(x)
        sandwich_margin = min(sandwich_margin, ratio - lo, hi - ratio)
        if ratio < lo - tol.tol_eq or ratio > hi + tol.tol_eq:
            sandwich_ok = False

    transfer_margin = np.inf
    transfer_ok = True
    for _ in range(samples):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        lhs = np.linalg.norm(PW @ adjoint(A) @ x)
        mid = np.linalg.norm(P_AW @ x)
        transfer_margin = min(transfer_margin, mid - lhs / d, lhs / c - mid)
        if mid < lhs / d - tol.tol_eq or mid > lhs / c + tol.tol_eq:
            transfer_ok = False

    return MixedInverseReport(
        invertible=invertible,
        projection_residual=projection_residual,
        sandwich_ok=sandwich_ok,
        sandwich_margin=float(sandwich_margin),
        transfer_ok=transfer_ok,
        transfer_margin=float(transfer_margin),
        samples=samples,
    )


@dataclass(frozen=True)
class TransformedBoundsReport:
    gamma: float
    predicted_lower: float
    predicted_upper: float
    measured_lower: float
    measured_upper: float
    is_frame: bool

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        return (
            self.is_frame
            and self.measured_lower >= self.predicted_lower - tol_eq
            and self.measured_upper <= self.predicted_upper + tol_eq
        )

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["satisfied"] = self.satisfied()
        return d


def transformed_fusion_bounds(
    W: FusionSequence, A, tol: ToleranceConfig = DEFAULT_TOL
) -> TransformedBoundsReport:
    """Push a fusion frame through an invertible operator: the images
    with the original weights stay a fusion frame, with bounds inflated
    or deflated by the squared condition number."""
    rep = classify(fusion_to_ov(W), tol)
    if not rep.is_frame:
        raise InvalidInput("input is not a fusion frame for the space")
    A = as_matrix(A)
    n = W.ambient_dim
    if A.shape != (n, n):
        raise InvalidInput("transform has the wrong shape")
    s = np.linalg.svd(A, compute_uv=False)
    if s[-1] <= tol.tol_rank * s[0]:
        raise InvalidInput("transform is numerically singular")
    gamma = float(s[0] / s[-1])

    pairs = []
    for S, c in W.pairs:
        if c == 0.0:
            pairs.append((Subspace.zero(n), 0.0))
        else:
            pairs.append((Subspace.from_span(A @ S.basis, tol), c))
    rep_t = classify(fusion_to_ov(FusionSequence(n, pairs)), tol)

    return TransformedBoundsReport(
        gamma=gamma,
        predicted_lower=rep.lower_bound / gamma**2,
        predicted_upper=rep.bessel_bound * gamma**2,
        measured_lower=rep_t.lower_bound,
        measured_upper=rep_t.bessel_bound,
        is_frame=rep_t.is_frame,
    )


@dataclass(frozen=True)
class FusionStabilityReport:
    """Stability of the canonical fusion duals under perturbation.

    The constant is evaluated from the closed form with
    c = 2 sqrt(beta) + mu and d = 1/(sqrt(alpha) - mu); the measured
    deviation of the canonical dual analysis operators must not exceed
    constant * mu. The weight consequence |c_i - d_i| <= mu is checked
    alongside.
    """

    mu: float
    alpha: float
    beta: float
    tau: float
    c: float
    d: float
    stability_constant: float
    bound: float
    measured: float
    max_weight_diff: float
    applicable: bool
    trivially_stable: bool

    def satisfied(self, tol_eq: float = DEFAULT_TOL.tol_eq) -> bool:
        if not self.applicable:
            return True
        return (
            self.measured <= self.bound + tol_eq
            and self.max_weight_diff <= self.mu + tol_eq
        )

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["satisfied"] = self.satisfied()
        return d


def fusion_stability_constant(
    alpha: float, beta: float, mu_val: float, tau: float
) -> float:
    """Closed form of the fusion stability constant."""
    c = 2 * np.sqrt(beta) + mu_val
    d = 1.0 / (np.sqrt(alpha) - mu_val)
    bracket = (1 + (1 / alpha + beta) ** 2) / np.sqrt(alpha) * (
        np.sqrt(2) / tau + c * d**2
    ) + d**2 * (1 + c**2 * d**2)
    return (c**2 + d**2) / alpha * bracket


def fusion_stability(
    W: FusionSequence, V: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> FusionStabilityReport:
    """Compare the canonical duals of a fusion frame and a perturbation.

    Requires the perturbation below sqrt of the lower bound and both
    weight sequences bounded below over a common nondegenerate index
    set; a degenerate index present in only one sequence leaves the
    weights unbounded below and the comparison undefined.
    """
    rep = classify(fusion_to_ov(W), tol)
    if not rep.is_frame:
        raise InvalidInput("reference is not a fusion frame for the space")
    if V.size != W.size or V.ambient_dim != W.ambient_dim:
        raise InvalidInput("fusion sequences are not compatible")

    alpha, beta = rep.lower_bound, rep.bessel_bound
    m = mu(fusion_to_ov(W), fusion_to_ov(V))
    if m >= np.sqrt(alpha):
        raise NotApplicable("perturbation is not below sqrt of the lower bound")

    deg_w = W.degenerate_indices()
    deg_v = V.degenerate_indices()
    if deg_w != deg_v:
        raise NotApplicable("degenerate indices differ, weights not bounded below")
    nondeg = [i for i in range(W.size) if i not in deg_w]
    if not nondeg:
        raise NotApplicable("no nondegenerate indices")
    tau = float(
        min(min(W.weights[i] for i in nondeg), min(V.weights[i] for i in nondeg))
    )

    constant = fusion_stability_constant(alpha, beta, m, tau)
    measured = op_norm(
        analysis_operator(fusion_to_ov(canonical_ffdual(W, tol)))
        - analysis_operator(fusion_to_ov(canonical_ffdual(V, tol)))
    )
    max_weight_diff = float(np.abs(W.weights - V.weights).max())

    return FusionStabilityReport(
        mu=m,
        alpha=alpha,
        beta=beta,
        tau=tau,
        c=2 * np.sqrt(beta) + m,
        d=1.0 / (np.sqrt(alpha) - m),
        stability_constant=constant,
        bound=constant * m,
        measured=measured,
        max_weight_diff=max_weight_diff,
        applicable=True,
        trivially_stable=m < 1e-14,
    )


def prior_deviation_bound(alpha: float, beta: float, m: float) -> float:
    """Earlier canonical dual deviation bound for frames, evaluated with
    the perturbed bounds substituted: (alpha + 2 beta + sqrt(beta) mu) mu
    over (alpha (sqrt(alpha) - mu)^2). Used for sharpness comparisons."""
    return (alpha + 2 * beta + np.sqrt(beta) * m) * m / (alpha * (np.sqrt(alpha) - m) ** 2)
