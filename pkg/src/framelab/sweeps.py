"""Randomized property sweeps pitting measured quantities against their
closed-form bounds. Each sweep seeds its own generator, so runs are
reproducible; the returned dictionaries count violations (zero on a
healthy build) and track the worst margins seen."""

from __future__ import annotations

import numpy as np

from . import randgen
from .fusion import (
    canonical_ffdual,
    canonical_ffdual_witness,
    ffdual_verify,
    fusion_to_ov,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, adjoint, op_norm, proj, restricted_inverse
from .ovframe import (
    analysis_operator,
    canonical_dual,
    classify,
    frame_operator,
    frame_subspace,
    make_dual,
)
from .perturb import (
    best_approx_check,
    canonical_dual_deviation,
    difference_decomposition_check,
    dual_bijection,
    fusion_stability,
    mu,
    perturbation_report,
    pq_projection_bound,
    prior_deviation_bound,
    r_lambda_suite,
    stable_dual,
    transformed_fusion_bounds,
)


def _random_dims(rng, n_max=6, k_max=3, m_max=8):
    n = int(rng.integers(2, n_max + 1))
    k = int(rng.integers(1, k_max + 1))
    m_lo = -(-n // k)  # ceil(n / k) so a frame for the space is possible
    m = int(rng.integers(m_lo, m_max + 1))
    return n, k, m


def duality_sweep(
    trials: int = 500,
    seed: int = 42,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_identity: float = 1e-9,
    tol_bounds: float = 1e-8,
) -> dict:
    """Duality identity, dual frame operator formula, and canonical dual
    bounds over random frame sequences with random dual parameters."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_identity = max_frame_op = max_bounds = 0.0
    for _ in range(trials):
        n, k, m = _random_dims(rng)
        rank = int(rng.integers(1, min(n, m * k) + 1))
        A = randgen.random_frame_sequence(rng, n, k, m, rank=rank)
        L = randgen.random_dual_param(rng, A, tol=tol)
        dual = make_dual(A, L, tol)

        TA = analysis_operator(A)
        TD = analysis_operator(dual)
        H = frame_subspace(A, tol)
        P = proj(H)
        r1 = op_norm(adjoint(TD) @ TA - P)

        Sinv = restricted_inverse(frame_operator(A), H, tol)
        r2 = op_norm(frame_operator(dual) - (Sinv + adjoint(L) @ L) @ P)

        rep = classify(A, tol)
        rep_c = classify(canonical_dual(A, tol), tol)
        r3 = max(
            abs(rep_c.lower_bound - 1.0 / rep.bessel_bound),
            abs(rep_c.bessel_bound - 1.0 / rep.lower_bound),
        )

        max_identity = max(max_identity, r1)
        max_frame_op = max(max_frame_op, r2)
        max_bounds = max(max_bounds, r3)
        if r1 > tol_identity or r2 > tol_identity or r3 > tol_bounds:
            violations += 1
    return {
        "sweep": "duality",
        "trials": trials,
        "violations": violations,
        "max_identity_residual": max_identity,
        "max_frame_operator_residual": max_frame_op,
        "max_bounds_residual": max_bounds,
        "ok": violations == 0,
    }


def _perturbation_instance(rng, tol, frame_case: bool):
    n, k, m = _random_dims(rng)
    rank = n if frame_case else int(rng.integers(1, min(n, m * k) + 1))
    A = randgen.random_frame_sequence(rng, n, k, m, rank=rank)
    alpha = classify(A, tol).lower_bound
    target = 0.3 * np.sqrt(alpha) * (1.0 - rng.random())
    B = randgen.perturbed_sequence(rng, A, target, rotate=not frame_case, tol=tol)
    return A, B


def perturbation_sweep(
    trials: int = 200,
    seed: int = 43,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_bound: float = 1e-8,
) -> dict:
    """Perturbed frame bounds, subspace and range gap bounds, canonical
    dual deviation, and the stable dual constant (with its frame case
    form), alternating frame and proper frame sequence instances."""
    rng = np.random.default_rng(seed)
    counts = {
        "span_gap": 0,
        "frame_bounds": 0,
        "range_gap": 0,
        "canonical_deviation": 0,
        "stable_lambda": 0,
        "frame_case_lambda": 0,
    }
    not_applicable = 0
    for t in range(trials):
        frame_case = t % 2 == 0
        A, B = _perturbation_instance(rng, tol, frame_case)
        rep = perturbation_report(A, B, tol)
        if not rep.applicable:
            not_applicable += 1
            continue
        checks = rep.checks(tol_bound)
        if not (checks["span_gap_within"] and checks["range_gap_directed_within"]):
            counts["span_gap"] += 1
        if not checks["bounds_bracketed"]:
            counts["frame_bounds"] += 1
        if not checks["range_gap_within"]:
            counts["range_gap"] += 1
        if not canonical_dual_deviation(A, B, tol).satisfied(tol_bound):
            counts["canonical_deviation"] += 1
        L = randgen.random_dual_param(rng, A, tol=tol)
        _, dev = stable_dual(A, B, L, tol)
        if not dev.satisfied(tol_bound):
            counts["stable_lambda"] += 1
        if frame_case and not dev.is_frame_case:
            counts["frame_case_lambda"] += 1
        if frame_case and dev.is_frame_case and not dev.satisfied(tol_bound):
            counts["frame_case_lambda"] += 1
    violations = sum(counts.values())
    return {
        "sweep": "perturbation",
        "trials": trials,
        "not_applicable": not_applicable,
        "violations": violations,
        "by_check": counts,
        "ok": violations == 0 and not_applicable == 0,
    }


def best_approx_sweep(
    pairs: int = 100,
    trials_per_pair: int = 20,
    seed: int = 44,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> dict:
    """Best approximation property of the stable dual over random frame
    pairs and random competing duals."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_hs = 0.0
    for t in range(pairs):
        A, B = _perturbation_instance(rng, tol, frame_case=True)
        L = randgen.random_dual_param(rng, A, tol=tol)
        rep = best_approx_check(
            A, B, L, trials=trials_per_pair, tol=tol, seed=int(rng.integers(2**31))
        )
        max_hs = max(max_hs, rep.hs_projection_residual)
        if not rep.satisfied(1e-9):
            violations += 1
    return {
        "sweep": "best_approx",
        "pairs": pairs,
        "trials_per_pair": trials_per_pair,
        "violations": violations,
        "max_hs_projection_residual": max_hs,
        "ok": violations == 0,
    }


def bijection_sweep(
    trials: int = 100,
    seed: int = 45,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_roundtrip: float = 1e-9,
) -> dict:
    """Round trips of the dual parameter correspondence on both bases."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_residual = 0.0
    for t in range(trials):
        A, B = _perturbation_instance(rng, tol, frame_case=t % 2 == 0)
        _, _, rep = dual_bijection(A, B, tol)
        max_residual = max(
            max_residual, rep.residual_roundtrip_a, rep.residual_roundtrip_b
        )
        if not rep.satisfied(tol_roundtrip):
            violations += 1
    return {
        "sweep": "bijection",
        "trials": trials,
        "violations": violations,
        "max_roundtrip_residual": max_residual,
        "ok": violations == 0,
    }


def decomposition_sweep(
    trials: int = 200,
    seed: int = 46,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_residual: float = 1e-10,
) -> dict:
    """Four-term decomposition of dual differences on unrelated random
    frame sequence pairs with random parameters on both sides."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_residual = 0.0
    for _ in range(trials):
        n, k, m = _random_dims(rng)
        rank_a = int(rng.integers(1, min(n, m * k) + 1))
        rank_b = int(rng.integers(1, min(n, m * k) + 1))
        A = randgen.random_frame_sequence(rng, n, k, m, rank=rank_a)
        B = randgen.random_frame_sequence(rng, n, k, m, rank=rank_b)
        L = randgen.random_dual_param(rng, A, tol=tol)
        M = randgen.random_dual_param(rng, B, tol=tol)
        r = difference_decomposition_check(A, B, L, M, tol)
        max_residual = max(max_residual, r)
        if r > tol_residual:
            violations += 1
    return {
        "sweep": "decomposition",
        "trials": trials,
        "violations": violations,
        "max_residual": max_residual,
        "ok": violations == 0,
    }


def canonical_ffdual_sweep(
    trials: int = 200, seed: int = 47, tol: ToleranceConfig = DEFAULT_TOL
) -> dict:
    """Canonical fusion dual verifies with its witness on random fusion
    frames."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_residual = 0.0
    for _ in range(trials):
        n = int(rng.integers(2, 6))
        m = int(rng.integers(2, 9))
        W = randgen.random_fusion_frame(rng, n, m)
        dual = canonical_ffdual(W, tol)
        check = ffdual_verify(dual, W, canonical_ffdual_witness(W, tol), tol)
        max_residual = max(max_residual, check.reconstruction_residual)
        if not check:
            violations += 1
    return {
        "sweep": "canonical_ffdual",
        "trials": trials,
        "violations": violations,
        "max_reconstruction_residual": max_residual,
        "ok": violations == 0,
    }


def pq_sweep(
    trials: int = 500,
    seed: int = 48,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_bound: float = 1e-8,
) -> dict:
    """Weighted projector comparison bound on random projection pairs."""
    rng = np.random.default_rng(seed)
    violations = 0
    min_margin = np.inf
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        P = proj(randgen.random_subspace(rng, n, int(rng.integers(0, n + 1))))
        Q = proj(randgen.random_subspace(rng, n, int(rng.integers(0, n + 1))))
        c, d = rng.uniform(0.2, 3.0, size=2)
        bound, measured = pq_projection_bound(P, Q, float(c), float(d), tol)
        min_margin = min(min_margin, bound - measured)
        if measured > bound + tol_bound:
            violations += 1
    return {
        "sweep": "pq_projection",
        "trials": trials,
        "violations": violations,
        "min_margin": float(min_margin),
        "ok": violations == 0,
    }


def rlambda_sweep(
    trials: int = 300,
    seed: int = 49,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_bound: float = 1e-8,
) -> dict:
    """Mixed inverse suite on random invertible operators and subspaces."""
    rng = np.random.default_rng(seed)
    violations = 0
    for t in range(trials):
        n = int(rng.integers(2, 7))
        U = randgen.random_orthonormal(rng, n, n)
        V = randgen.random_orthonormal(rng, n, n)
        s = rng.uniform(0.5, 2.0, size=n)
        A = U @ np.diag(s) @ adjoint(V)
        c, d = float(s.min()), float(s.max())
        W = randgen.random_subspace(rng, n, int(rng.integers(0, n + 1)))
        lam = c * d if t % 3 == 0 else float(rng.uniform(0.3, 3.0))
        rep = r_lambda_suite(A, W, lam, c, d, tol, seed=int(rng.integers(2**31)))
        if not rep.satisfied(tol_bound):
            violations += 1
    return {
        "sweep": "r_lambda",
        "trials": trials,
        "violations": violations,
        "ok": violations == 0,
    }


def transformed_fusion_sweep(
    trials: int = 200,
    seed: int = 50,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_bound: float = 1e-8,
) -> dict:
    """Condition number bounds for fusion frames mapped by invertible
    operators."""
    rng = np.random.default_rng(seed)
    violations = 0
    for _ in range(trials):
        n = int(rng.integers(2, 6))
        W = randgen.random_fusion_frame(rng, n, int(rng.integers(2, 7)))
        U = randgen.random_orthonormal(rng, n, n)
        V = randgen.random_orthonormal(rng, n, n)
        s = rng.uniform(0.4, 2.2, size=n)
        A = U @ np.diag(s) @ adjoint(V)
        if not transformed_fusion_bounds(W, A, tol).satisfied(tol_bound):
            violations += 1
    return {
        "sweep": "transformed_fusion",
        "trials": trials,
        "violations": violations,
        "ok": violations == 0,
    }


def fusion_stability_sweep(
    trials: int = 200,
    seed: int = 51,
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_bound: float = 1e-8,
) -> dict:
    """Canonical fusion dual stability bound over random perturbation
    pairs with the perturbation size swept below 0.3 sqrt(alpha)."""
    rng = np.random.default_rng(seed)
    violations = 0
    min_slack = np.inf
    for _ in range(trials):
        n = int(rng.integers(2, 6))
        W = randgen.random_fusion_frame(rng, n, int(rng.integers(2, 9)))
        alpha = classify(fusion_to_ov(W), tol).lower_bound
        limit = 0.3 * np.sqrt(alpha)
        size = float(rng.uniform(0.01, 0.2))
        for _ in range(32):
            V = randgen.perturbed_fusion(rng, W, size)
            if mu(fusion_to_ov(W), fusion_to_ov(V)) <= limit:
                break
            size *= 0.5
        rep = fusion_stability(W, V, tol)
        if rep.mu > 0:
            min_slack = min(min_slack, rep.bound - rep.measured)
        if not rep.satisfied(tol_bound):
            violations += 1
    return {
        "sweep": "fusion_stability",
        "trials": trials,
        "violations": violations,
        "min_slack": float(min_slack),
        "ok": violations == 0,
    }


def bound_comparison_sweep(
    trials: int = 100, seed: int = 52, tol: ToleranceConfig = DEFAULT_TOL
) -> dict:
    """The canonical deviation bound must beat the earlier literature
    bound strictly on every random frame and admissible perturbation
    size."""
    rng = np.random.default_rng(seed)
    violations = 0
    max_ratio = 0.0
    for _ in range(trials):
        n, k, m = _random_dims(rng)
        A = randgen.random_frame_sequence(rng, n, k, m, rank=n)
        rep = classify(A, tol)
        alpha, beta = rep.lower_bound, rep.bessel_bound
        m_val = float(rng.uniform(0.05, 0.9)) * np.sqrt(alpha)
        ours = 2 * m_val / (np.sqrt(alpha) * (np.sqrt(alpha) - m_val))
        prior = prior_deviation_bound(alpha, beta, m_val)
        max_ratio = max(max_ratio, ours / prior)
        if not ours < prior:
            violations += 1
    return {
        "sweep": "bound_comparison",
        "trials": trials,
        "violations": violations,
        "max_ratio_ours_to_prior": max_ratio,
        "ok": violations == 0,
    }


ALL_SWEEPS = {
    "duality": duality_sweep,
    "perturbation": perturbation_sweep,
    "best-approx": best_approx_sweep,
    "bijection": bijection_sweep,
    "decomposition": decomposition_sweep,
    "canonical-ffdual": canonical_ffdual_sweep,
    "pq": pq_sweep,
    "r-lambda": rlambda_sweep,
    "transformed-fusion": transformed_fusion_sweep,
    "fusion-stability": fusion_stability_sweep,
    "comparison": bound_comparison_sweep,
}
