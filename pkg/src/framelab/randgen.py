"""Seeded random generators for frames, fusion frames and perturbations.

Frame sequences are built with a controlled singular spectrum so that
sweeps never hit ill-conditioned instances; perturbations combine a
component inside the frame subspace with a small rotation of the whole
space, which moves the subspace itself while keeping its dimension.
"""

from __future__ import annotations

import numpy as np

from .linalg import DEFAULT_TOL, Subspace, ToleranceConfig, adjoint, op_norm
from .fusion import FusionSequence, fusion_to_ov
from .ovframe import OVSequence, analysis_operator, classify, dual_param_space, frame_subspace


def random_vector(rng, n: int, complex_: bool = True) -> np.ndarray:
    v = rng.standard_normal(n)
    if complex_:
        v = v + 1j * rng.standard_normal(n)
    return v.astype(complex)


def random_orthonormal(rng, n: int, r: int, complex_: bool = True) -> np.ndarray:
    """n x r matrix with orthonormal columns, Haar-ish via QR."""
    G = rng.standard_normal((n, r))
    if complex_:
        G = G + 1j * rng.standard_normal((n, r))
    Q, R = np.linalg.qr(G)
    d = np.diagonal(R).copy()
    d[np.abs(d) < 1e-12] = 1.0
    return (Q * (d / np.abs(d)).conj()).astype(complex)


def random_subspace(rng, n: int, r: int, complex_: bool = True) -> Subspace:
    if r == 0:
        return Subspace.zero(n)
    return Subspace(n, random_orthonormal(rng, n, r, complex_))


def cayley_rotation(rng, n: int, angle: float, complex_: bool = True) -> np.ndarray:
    """Unitary close to the identity: Cayley transform of a small
    skew-adjoint generator with unit norm."""
    G = rng.standard_normal((n, n))
    if complex_:
        G = G + 1j * rng.standard_normal((n, n))
    K = G - adjoint(G)
    nrm = op_norm(K)
    if nrm == 0.0:
        return np.eye(n, dtype=complex)
    K = K * (angle / 2.0 / nrm)
    eye = np.eye(n)
    return np.linalg.solve(eye + K, eye - K).astype(complex)


def random_frame_sequence(
    rng,
    n: int,
    k: int,
    m: int,
    rank: int | None = None,
    s_lo: float = 0.6,
    s_hi: float = 1.7,
    complex_: bool = True,
) -> OVSequence:
    """Frame sequence with prescribed span dimension and singular values
    drawn from [s_lo, s_hi]."""
    if rank is None:
        rank = n
    rank = min(rank, n, m * k)
    U = random_orthonormal(rng, m * k, rank, complex_)
    V = random_orthonormal(rng, n, rank, complex_)
    s = rng.uniform(s_lo, s_hi, size=rank)
    T = U @ np.diag(s) @ adjoint(V)
    return OVSequence.from_analysis(T, k)


def random_bessel_raw(rng, n: int, k: int, m: int, scale: float = 1.0, complex_: bool = True) -> OVSequence:
    """Plain Gaussian blocks, no spectrum control."""
    blocks = []
    for _ in range(m):
        G = rng.standard_normal((k, n))
        if complex_:
            G = G + 1j * rng.standard_normal((k, n))
        blocks.append(scale * G / np.sqrt(m * k))
    return OVSequence(blocks)


def random_dual_param(
    rng,
    A: OVSequence,
    max_norm: float = 2.0,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> np.ndarray:
    """Random element of the dual parameter space, scaled to a random
    norm in (0, max_norm]; the zero matrix when duals are unique."""
    basis = dual_param_space(A, tol)
    shape = analysis_operator(A).shape
    if not basis:
        return np.zeros(shape, dtype=complex)
    coeffs = rng.standard_normal(len(basis)) + 1j * rng.standard_normal(len(basis))
    L = sum(c * E for c, E in zip(coeffs, basis))
    nrm = op_norm(L)
    if nrm == 0.0:
        return L
    return L * (max_norm * (1.0 - rng.random()) / nrm)


def perturbed_sequence(
    rng,
    A: OVSequence,
    size: float,
    rotate: bool = True,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> OVSequence:
    """A perturbation of comparable shape whose frame subspace is a
    slightly rotated copy of the original one.

    ``size`` caps the analysis distance: an in-span additive part and a
    rotation each contribute at most half of it.
    """
    T = analysis_operator(A)
    P = frame_subspace(A, tol).projector()
    E = rng.standard_normal(T.shape) + 1j * rng.standard_normal(T.shape)
    E = E @ P
    e_norm = op_norm(E)
    if e_norm > 0:
        E *= (size / 2.0) / e_norm
    T_new = T + E
    if rotate:
        angle = (size / 2.0) / max(op_norm(T_new), 1.0)
        U = cayley_rotation(rng, A.domain_dim, angle)
        T_new = T_new @ adjoint(U)
    return OVSequence.from_analysis(T_new, A.codomain_dim)


def random_fusion_frame(
    rng,
    n: int,
    m: int,
    w_lo: float = 0.4,
    w_hi: float = 1.6,
    max_dim: int | None = None,
    complex_: bool = True,
) -> FusionSequence:
    """Random fusion frame for the whole space (resamples until the
    subspaces span)."""
    if max_dim is None:
        max_dim = n
    for _ in range(64):
        pairs = []
        for _ in range(m):
            r = int(rng.integers(1, max_dim + 1))
            pairs.append(
                (random_subspace(rng, n, r, complex_), float(rng.uniform(w_lo, w_hi)))
            )
        W = FusionSequence(n, pairs)
        if classify(fusion_to_ov(W)).is_frame:
            return W
    raise RuntimeError("failed to sample a spanning fusion frame")


def perturbed_fusion(
    rng,
    W: FusionSequence,
    size: float,
    weight_floor: float = 0.2,
    complex_: bool = True,
) -> FusionSequence:
    """Rotate every subspace a little and jitter the weights, keeping
    them above a floor. The resulting analysis distance grows with
    ``size`` but is not calibrated; measure it afterwards."""
    n = W.ambient_dim
    pairs = []
    for S, c in W.pairs:
        if c == 0.0:
            pairs.append((Subspace.zero(n), 0.0))
            continue
        U = cayley_rotation(rng, n, size * rng.uniform(0.2, 1.0), complex_)
        new_basis = U @ S.basis
        new_weight = max(weight_floor, c + size * rng.uniform(-0.5, 0.5))
        pairs.append((Subspace.from_span(new_basis), float(new_weight)))
    return FusionSequence(n, pairs)
