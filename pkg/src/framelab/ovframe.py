"""Operator-valued Bessel and frame sequences and their duals.

A sequence of operators A_i mapping an n-dimensional space H into a
k-dimensional space K is stored as a stack of m blocks of shape (k, n).
Its analysis operator is the (m*k, n) vertical stack, the frame
operator is S = T^H T, and the sequence is a frame sequence on the span
of the block adjoints. Duals D are Bessel sequences whose analysis
operator satisfies T_D^H T = P (projection onto that span) with
ran T_D^H inside the span; they form an affine family parametrized by
matrices L with T^H L = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateInput,
    InvalidDualParam,
    InvalidInput,
    RankError,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    adjoint,
    as_matrix,
    as_vector,
    kernel_basis,
    op_norm,
    proj,
    range_basis,
    restricted_inverse,
)


class OVSequence:
    """A finite operator-valued sequence with blocks of common shape (k, n)."""

    def __init__(self, blocks):
        mats = [as_matrix(b) for b in blocks]
        if not mats:
            raise InvalidInput("an operator sequence needs at least one block")
        shape = mats[0].shape
        if any(b.shape != shape for b in mats):
            raise InvalidInput("all blocks must share the same shape")
        data = np.stack(mats)
        data.flags.writeable = False
        self._data = data

    @classmethod
    def from_analysis(cls, T, codomain_dim: int) -> "OVSequence":
        """Rebuild a sequence from a stacked analysis matrix."""
        T = as_matrix(T)
        rows, n = T.shape
        if codomain_dim <= 0 or rows % codomain_dim:
            raise InvalidInput("stacked rows are not a multiple of the codomain dimension")
        return cls(T.reshape(rows // codomain_dim, codomain_dim, n))

    @property
    def size(self) -> int:
        return self._data.shape[0]

    @property
    def codomain_dim(self) -> int:
        return self._data.shape[1]

    @property
    def domain_dim(self) -> int:
        return self._data.shape[2]

    @property
    def blocks(self) -> list[np.ndarray]:
        return list(self._data)

    def block(self, i: int) -> np.ndarray:
        return self._data[i]

    def same_shape(self, other: "OVSequence") -> bool:
        return self._data.shape == other._data.shape

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        m, k, n = self._data.shape
        return f"OVSequence({m} blocks of shape {k}x{n})"


def analysis_operator(A: OVSequence) -> np.ndarray:
    """Vertical stack of the blocks, shape (m*k, n)."""
    m, k, n = A._data.shape
    return A._data.reshape(m * k, n)


def frame_operator(A: OVSequence) -> np.ndarray:
    """S = T^H T = sum of A_i^H A_i, self-adjoint positive semidefinite."""
    T = analysis_operator(A)
    S = adjoint(T) @ T
    return 0.5 * (S + adjoint(S))


def frame_subspace(A: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Span of the ranges of the block adjoints (complement of ker T)."""
    return range_basis(adjoint(analysis_operator(A)), tol)


@dataclass(frozen=True)
class FrameReport:
    """Classification of an operator-valued sequence.

    bessel_bound and lower_bound are the optimal frame bounds on the
    span; span_dim is that span's dimension. A nonzero sequence is
    always a frame sequence in finite dimensions (ranges are closed),
    so the flag only rules out the zero sequence.
    """

    bessel_bound: float
    lower_bound: float
    span_dim: int
    is_frame_sequence: bool
    is_frame: bool
    is_tight: bool
    is_parseval: bool

    def to_dict(self) -> dict:
        return self.__dict__.copy()


def classify(A: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> FrameReport:
    T = analysis_operator(A)
    s = np.linalg.svd(T, compute_uv=False)
    smax = float(s[0]) if s.size else 0.0
    if smax == 0.0:
        return FrameReport(0.0, 0.0, 0, False, False, False, False)
    kept = s[s > tol.tol_rank * smax]
    beta = smax**2
    alpha = float(kept[-1]) ** 2
    span_dim = int(kept.size)
    is_frame = span_dim == A.domain_dim
    is_tight = abs(beta - alpha) <= tol.tol_eq * max(1.0, beta)
    is_parseval = is_tight and abs(beta - 1.0) <= tol.tol_eq * max(1.0, beta)
    return FrameReport(beta, alpha, span_dim, True, is_frame, is_tight, is_parseval)


def _restricted_frame_inverse(A: OVSequence, tol: ToleranceConfig) -> tuple[np.ndarray, Subspace]:
    H = frame_subspace(A, tol)
    Sinv = restricted_inverse(frame_operator(A), H, tol)
    return Sinv, H


def canonical_dual(A: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> OVSequence:
    """Dual with blocks A_i (S|span)^{-1} P; frame operator (S|span)^{-1} P."""
    if op_norm(analysis_operator(A)) == 0.0:
        raise DegenerateInput("zero sequence has no dual")
    Sinv, _ = _restricted_frame_inverse(A, tol)
    return OVSequence(A._data @ Sinv)


def dual_param_space(A: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis (Hilbert-Schmidt) of the dual parameter space.

    Parameters are (m*k, n) matrices L with T^H L = 0 whose rows live in
    the frame subspace; the basis elements are rank-one products of a
    kernel basis vector of T^H and a frame subspace basis vector. The
    list is empty exactly when the dual is unique.
    """
    T = analysis_operator(A)
    K = kernel_basis(adjoint(T), tol).basis
    B = frame_subspace(A, tol).basis
    out = []
    for u in range(K.shape[1]):
        for v in range(B.shape[1]):
            out.append(np.outer(K[:, u], B[:, v].conj()))
    return out


def check_dual_param(A: OVSequence, L, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate a dual parameter for A and return it as an array."""
    L = as_matrix(L)
    T = analysis_operator(A)
    if L.shape != T.shape:
        raise InvalidDualParam(f"parameter shape {L.shape} does not match {T.shape}")
    if op_norm(adjoint(T) @ L) > tol.tol_eq * max(1.0, op_norm(L)):
        raise InvalidDualParam("parameter is not orthogonal to the analysis range")
    P = proj(frame_subspace(A, tol))
    if op_norm(L @ P - L) > tol.tol_eq * max(1.0, op_norm(L)):
        raise InvalidDualParam("parameter does not act on the frame subspace")
    return L


def make_dual(A: OVSequence, L, tol: ToleranceConfig = DEFAULT_TOL) -> OVSequence:
    """Dual with analysis operator (T (S|span)^{-1} + L) P."""
    L = check_dual_param(A, L, tol)
    Sinv, H = _restricted_frame_inverse(A, tol)
    T = analysis_operator(A)
    T_dual = (T @ Sinv + L) @ proj(H)
    return OVSequence.from_analysis(T_dual, A.codomain_dim)


def is_dual(A: OVSequence, D: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True iff T_D^H T_A is the projection onto the frame subspace of A
    and the synthesis range of D lies inside that subspace."""
    return dual_diagnostics(A, D, tol)["is_dual"]


def dual_diagnostics(A: OVSequence, D: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> dict:
    """Residuals behind the duality test, plus whether the two frame
    subspaces actually coincide (not required, but often true)."""
    if not A.same_shape(D):
        raise InvalidInput("sequences have different shapes")
    TA = analysis_operator(A)
    TD = analysis_operator(D)
    HA = frame_subspace(A, tol)
    P = proj(HA)
    identity_residual = op_norm(adjoint(TD) @ TA - P)
    containment_residual = op_norm((np.eye(A.domain_dim) - P) @ adjoint(TD))
    HD = frame_subspace(D, tol)
    return {
        "identity_residual": identity_residual,
        "containment_residual": containment_residual,
        "is_dual": identity_residual <= tol.tol_eq and containment_residual <= tol.tol_eq,
        "span_equality": HD.dim == HA.dim and HA.contains(HD, tol),
    }


def from_vectors(vectors) -> OVSequence:
    """Vector frame as an operator-valued sequence of one-row blocks."""
    vs = [as_vector(v) for v in vectors]
    if not vs:
        raise InvalidInput("need at least one vector")
    n = vs[0].size
    if any(v.size != n for v in vs):
        raise InvalidInput("vectors must share a common dimension")
    return OVSequence([v.conj()[None, :] for v in vs])


def to_vectors(A: OVSequence, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Recover the vectors of a rank-one sequence.

    Each nonzero block must have rank one; the block is written as an
    outer product with a unit left vector whose leading nonzero entry is
    made real positive, which fixes the phase. Raises RankError on a
    block of rank two or more.
    """
    out = []
    for i in range(A.size):
        block = A.block(i)
        U, s, _ = np.linalg.svd(block)
        if s.size == 0 or s[0] == 0.0:
            out.append(np.zeros(A.domain_dim, dtype=complex))
            continue
        if np.count_nonzero(s > tol.tol_rank * s[0]) > 1:
            raise RankError(f"block {i} has rank above one")
        u = U[:, 0]
        lead = np.flatnonzero(np.abs(u) > 1e-8 * np.abs(u).max())[0]
        e = u * (u[lead].conj() / abs(u[lead]))
        out.append(adjoint(block) @ e)
    return out
