"""Curated reference constructions with closed-form answers.

The Mercedes-Benz frame (the equiangular tight frame of three vectors
in the plane) admits exact formulas for everything this toolkit
measures: the analysis distance to its one-vector perturbation, the
perturbed frame bounds, the stable dual in closed form, and the
parameter pair whose stable dual is the perturbed frame's canonical
dual. The fusion fixtures cover the asymmetry of Gavruta duality and
the tight orthogonal decomposition criterion. The inputs live as JSON
fixtures next to this module and double as format documentation.
"""

from __future__ import annotations

from importlib import resources

import numpy as np

from . import jsonio
from .fusion import (
    FusionSequence,
    canonical_ffdual,
    canonical_ffdual_witness,
    ffdual_verify,
    gavruta_is_dual,
    tight_orthogonal_decomposition,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, adjoint, kernel_basis, op_norm
from .ovframe import OVSequence, analysis_operator, from_vectors
from .perturb import canonical_dual_deviation, perturbation_report, stable_dual


def _fixture(name: str) -> dict:
    path = resources.files("framelab.fixtures").joinpath(name)
    return jsonio.load_json(path)


def mercedes_frame() -> OVSequence:
    return jsonio.ov_from_obj(_fixture("mercedes.json"))


def mercedes_perturbed(eps: float) -> OVSequence:
    """The first vector tilted by eps while keeping unit length."""
    if not 0 < eps < np.sqrt(15) / 4:
        raise ValueError("tilt parameter out of range")
    t = np.sqrt(1 - eps**2)
    scale = np.sqrt(2.0 / 3.0)
    vectors = [
        scale * np.array([eps, t]),
        scale * np.array([np.sqrt(3) / 2, -0.5]),
        scale * np.array([-np.sqrt(3) / 2, -0.5]),
    ]
    return from_vectors(vectors)


def mercedes_analysis_closed_form() -> np.ndarray:
    return (1 / np.sqrt(6)) * np.array([[0, 2], [np.sqrt(3), -1], [-np.sqrt(3), -1]], dtype=complex)


def mercedes_distance_closed_form(eps: float) -> float:
    delta = 1 - np.sqrt(1 - eps**2)
    return 2 * np.sqrt(delta / 3)


def mercedes_param(a: float, b: float) -> np.ndarray:
    """Dual parameters of the Mercedes-Benz frame: three equal rows."""
    return np.array([[a, b]] * 3, dtype=complex)


def mercedes_stable_dual_closed_form(eps: float, a: float, b: float) -> np.ndarray:
    """Closed form of the stable dual's analysis matrix."""
    t = np.sqrt(1 - eps**2)
    D = 9 - 4 * eps**2
    p_plus = 6 * t**2 + (3 + 2 * np.sqrt(3) * eps) * t + np.sqrt(3) * eps
    p_minus = 6 * t**2 + (3 - 2 * np.sqrt(3) * eps) * t - np.sqrt(3) * eps
    return (1 / D) * np.array(
        [
            [3 * (1 + 2 * t) * a, (np.sqrt(6) + 3 * b) * (1 + 2 * t)],
            [
                D / np.sqrt(2) + p_minus * a,
                -np.sqrt(1.5) * D + (np.sqrt(2.0 / 3.0) + b) * p_minus,
            ],
            [
                -D / np.sqrt(2) + p_plus * a,
                -np.sqrt(1.5) * D + (np.sqrt(2.0 / 3.0) + b) * p_plus,
            ],
        ],
        dtype=complex,
    )


def mercedes_ab_closed_form(eps: float) -> np.ndarray:
    """Parameters of the dual whose stable dual is the perturbed frame's
    canonical dual."""
    t = np.sqrt(1 - eps**2)
    return np.sqrt(2.0 / 3.0) / (1 + 2 * t) * np.array([eps, t - 1.0])


def mercedes_recover_ab(eps: float, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Solve for the parameter pair making the stable dual canonical.

    The stable dual of the parametrized dual is canonical exactly when
    the compression of its analysis operator onto the perturbed
    synthesis kernel vanishes, a linear condition on (a, b).
    """
    TA = analysis_operator(mercedes_frame())
    TB = analysis_operator(mercedes_perturbed(eps))
    u = kernel_basis(adjoint(TB), tol).basis[:, 0]
    # rows of the parameter are all (a, b): u^H (TA + L) = 0 gives
    # (a, b) = -u^H TA / sum(u).
    ab = -(u.conj() @ TA) / u.conj().sum()
    return ab.real


def run_mercedes(
    epsilons=(0.05, 0.1, 0.3),
    ab_grid=((0.0, 0.0), (0.3, -0.2), (1.1, 0.7)),
    tol: ToleranceConfig = DEFAULT_TOL,
    tol_distance: float = 1e-10,
    tol_match: float = 1e-9,
) -> dict:
    """Run the full worked example and report every residual."""
    A = mercedes_frame()
    analysis_residual = op_norm(analysis_operator(A) - mercedes_analysis_closed_form())
    results = []
    ok = analysis_residual <= tol_match
    for eps in epsilons:
        B = mercedes_perturbed(eps)
        rep = perturbation_report(A, B, tol)
        distance_residual = abs(rep.mu - mercedes_distance_closed_form(eps))
        bounds_ok = (
            (1 - eps) ** 2 <= rep.measured_lower + tol_match
            and rep.measured_upper <= (1 + eps) ** 2 + tol_match
        )
        dual_residuals = []
        for a, b in ab_grid:
            dual, _ = stable_dual(A, B, mercedes_param(a, b), tol)
            resid = np.abs(
                analysis_operator(dual) - mercedes_stable_dual_closed_form(eps, a, b)
            ).max()
            dual_residuals.append(float(resid))
        ab_residual = float(
            np.abs(mercedes_recover_ab(eps, tol) - mercedes_ab_closed_form(eps)).max()
        )
        deviation = canonical_dual_deviation(A, B, tol)
        entry = {
            "eps": eps,
            "mu": rep.mu,
            "distance_residual": distance_residual,
            "bounds": [rep.measured_lower, rep.measured_upper],
            "bounds_ok": bounds_ok,
            "stable_dual_residuals": dual_residuals,
            "ab_recovered_residual": ab_residual,
            "canonical_deviation": deviation.measured,
            "canonical_deviation_bound": deviation.bound,
        }
        entry["ok"] = (
            distance_residual <= tol_distance
            and bounds_ok
            and max(dual_residuals) <= tol_match
            and ab_residual <= tol_match
            and deviation.satisfied()
        )
        ok = ok and entry["ok"]
        results.append(entry)
    return {
        "name": "mercedes",
        "analysis_residual": analysis_residual,
        "cases": results,
        "ok": ok,
    }


def gavruta_pair() -> tuple[FusionSequence, FusionSequence]:
    """Coordinate lines with unit weights, and two copies of the whole
    plane: the first reconstructs through the second one way only."""
    W = jsonio.fusion_from_obj(_fixture("gavruta_w.json"))
    V = jsonio.fusion_from_obj(_fixture("gavruta_v.json"))
    return W, V


def run_gavruta(tol: ToleranceConfig = DEFAULT_TOL, tol_exact: float = 1e-12) -> dict:
    W, V = gavruta_pair()
    strict = ToleranceConfig(tol_rank=tol.tol_rank, tol_eq=tol_exact)
    forward = gavruta_is_dual(V, W, strict)
    backward = gavruta_is_dual(W, V, strict)

    # The reversed sum collapses to half the identity; measure it.
    n = W.ambient_dim
    S_V = np.zeros((n, n), dtype=complex)
    for S, d in V.pairs:
        S_V += d**2 * S.projector()
    reversed_sum = sum(
        c * d * WS.projector() @ np.linalg.inv(S_V) @ VS.projector()
        for (WS, c), (VS, d) in zip(W.pairs, V.pairs)
    )
    half_residual = op_norm(reversed_sum - 0.5 * np.eye(n))
    ok = forward and not backward and half_residual <= tol_exact
    return {
        "name": "gavruta-counterexample",
        "forward_is_dual": forward,
        "backward_is_dual": backward,
        "reversed_sum_half_identity_residual": half_residual,
        "ok": bool(ok),
    }


def decomposition_fixtures() -> dict[str, FusionSequence]:
    return {
        "orthonormal_lines": jsonio.fusion_from_obj(_fixture("ff_orthonormal_lines.json")),
        "oblique_lines": jsonio.fusion_from_obj(_fixture("ff_oblique_lines.json")),
        "block_tight": jsonio.fusion_from_obj(_fixture("ff_block_tight.json")),
    }


def run_decomposition(tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Tight orthogonal decomposition answers on the three fixtures:
    orthonormal lines decompose with a single constant, the oblique pair
    does not decompose, the scaled block construction splits in two."""
    fixtures = decomposition_fixtures()
    out = {"name": "decomposition"}

    dec = tight_orthogonal_decomposition(fixtures["orthonormal_lines"], tol)
    out["orthonormal_lines"] = dec.to_dict() if dec else None
    ok = dec is not None and len(dec.groups) == 1 and abs(dec.groups[0][1] - 1.0) <= 1e-9

    dec2 = tight_orthogonal_decomposition(fixtures["oblique_lines"], tol)
    out["oblique_lines"] = dec2.to_dict() if dec2 else None
    ok = ok and dec2 is None

    dec3 = tight_orthogonal_decomposition(fixtures["block_tight"], tol)
    out["block_tight"] = dec3.to_dict() if dec3 else None
    ok = ok and dec3 is not None and len(dec3.groups) == 2

    # The oblique pair is still a fusion frame; its canonical dual
    # verifies even though no decomposition exists.
    W = fixtures["oblique_lines"]
    check = ffdual_verify(
        canonical_ffdual(W, tol), W, canonical_ffdual_witness(W, tol), tol
    )
    out["oblique_canonical_dual_ok"] = bool(check)
    out["ok"] = bool(ok and check)
    return out


REPRODUCTIONS = {
    "mercedes": run_mercedes,
    "gavruta-counterexample": run_gavruta,
    "decomposition": run_decomposition,
}
