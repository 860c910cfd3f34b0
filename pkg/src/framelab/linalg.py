"""Dense numerical kernels: norms, orthonormal bases, projections,
restricted inverses.

Matrices are plain complex ``numpy`` arrays; real input is promoted to
complex on entry. Rank decisions use a relative singular value cutoff
(``tol_rank``), matrix equalities an absolute tolerance (``tol_eq``)
calibrated for operators of norm O(1). Everything here is a pure
function of its inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, InvalidInput, SingularRestriction

DEFAULT_TOL_RANK = 1e-10
DEFAULT_TOL_EQ = 1e-8


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds shared across the toolkit.

    tol_rank: relative cutoff below which singular values count as zero.
    tol_eq: absolute tolerance for scalar and matrix equality checks.
    """

    tol_rank: float = DEFAULT_TOL_RANK
    tol_eq: float = DEFAULT_TOL_EQ

    def __post_init__(self):
        if not (0.0 < self.tol_rank < 1.0):
            raise InvalidInput("tol_rank must lie strictly between 0 and 1")
        if self.tol_eq <= 0.0:
            raise InvalidInput("tol_eq must be positive")


DEFAULT_TOL = ToleranceConfig()


def as_matrix(data) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    M = np.asarray(data, dtype=complex)
    if M.ndim != 2:
        raise InvalidInput(f"expected a matrix, got ndim={M.ndim}")
    if M.size and not np.isfinite(M).all():
        raise InvalidInput("matrix has non-finite entries")
    return M


def as_vector(data) -> np.ndarray:
    """Coerce to a 1-d complex array, rejecting non-finite entries."""
    v = np.asarray(data, dtype=complex)
    if v.ndim != 1:
        raise InvalidInput(f"expected a vector, got ndim={v.ndim}")
    if v.size and not np.isfinite(v).all():
        raise InvalidInput("vector has non-finite entries")
    return v


def adjoint(M: np.ndarray) -> np.ndarray:
    return M.conj().T


def op_norm(M) -> float:
    """Operator (spectral) norm; 0 for empty matrices."""
    M = as_matrix(M)
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def singular_values(M) -> np.ndarray:
    M = as_matrix(M)
    if M.size == 0:
        return np.zeros(0)
    return np.linalg.svd(M, compute_uv=False)


def min_nonzero_sv(M, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Smallest singular value above the rank cutoff ``tol_rank * sigma_max``.

    Raises DegenerateInput if the matrix is numerically zero.
    """
    s = singular_values(M)
    if s.size == 0 or s[0] == 0.0:
        raise DegenerateInput("matrix is numerically zero")
    kept = s[s > tol.tol_rank * s[0]]
    return float(kept[-1])


def numeric_rank(M, tol: ToleranceConfig = DEFAULT_TOL) -> int:
    s = singular_values(M)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.count_nonzero(s > tol.tol_rank * s[0]))


@dataclass(frozen=True)
class Subspace:
    """A subspace of C^n stored through an orthonormal basis matrix.

    ``basis`` has shape (ambient_dim, dim) with orthonormal columns; the
    zero subspace is the 0-column case. Instances are immutable.
    """

    ambient_dim: int
    basis: np.ndarray

    _ORTH_TOL = 1e-8

    def __post_init__(self):
        B = as_matrix(self.basis)
        if B.shape[0] != self.ambient_dim:
            raise InvalidInput("basis rows do not match ambient dimension")
        if B.shape[1] > self.ambient_dim:
            raise InvalidInput("subspace dimension exceeds ambient dimension")
        gram = adjoint(B) @ B
        if B.shape[1] and np.abs(gram - np.eye(B.shape[1])).max() > self._ORTH_TOL:
            raise InvalidInput("basis columns are not orthonormal")
        B = B.copy()
        B.flags.writeable = False
        object.__setattr__(self, "basis", B)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @classmethod
    def from_span(cls, M, tol: ToleranceConfig = DEFAULT_TOL) -> "Subspace":
        """Subspace spanned by the columns of ``M`` (orthonormalized)."""
        M = as_matrix(M)
        return range_basis(M, tol)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, np.eye(n, dtype=complex))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, np.zeros((n, 0), dtype=complex))

    def projector(self) -> np.ndarray:
        return proj(self)

    def perp(self) -> "Subspace":
        """Orthogonal complement."""
        return kernel_basis(adjoint(self.basis))

    def contains(self, other: "Subspace", tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise InvalidInput("ambient dimensions differ")
        if other.dim == 0:
            return True
        resid = other.basis - self.basis @ (adjoint(self.basis) @ other.basis)
        return op_norm(resid) <= tol.tol_eq


def range_basis(M, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of ran M under the rank cutoff."""
    M = as_matrix(M)
    if M.size == 0:
        return Subspace.zero(M.shape[0])
    U, s, _ = np.linalg.svd(M, full_matrices=False)
    r = int(np.count_nonzero(s > tol.tol_rank * s[0])) if s[0] > 0 else 0
    return Subspace(M.shape[0], U[:, :r])


def kernel_basis(M, tol: ToleranceConfig = DEFAULT_TOL) -> Subspace:
    """Orthonormal basis of ker M under the rank cutoff."""
    M = as_matrix(M)
    n = M.shape[1]
    if M.size == 0:
        return Subspace.full(n)
    _, s, Vh = np.linalg.svd(M, full_matrices=True)
    r = int(np.count_nonzero(s > tol.tol_rank * s[0])) if s.size and s[0] > 0 else 0
    return Subspace(n, adjoint(Vh[r:, :]))


def proj(S: Subspace) -> np.ndarray:
    """Orthogonal projection onto the subspace: basis @ basis^H."""
    B = S.basis
    return B @ adjoint(B)


def restricted_inverse(S, V: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Matrix realizing (S|V)^{-1} P_V for a self-adjoint S leaving V invariant.

    Maps the orthogonal complement of V to zero and inverts S on V, so
    composing with S and P_V returns P_V. Raises InvalidInput when S is
    not self-adjoint or does not leave V invariant, SingularRestriction
    when S|V is numerically singular.
    """
    S = as_matrix(S)
    n = S.shape[0]
    if S.shape[1] != n or V.ambient_dim != n:
        raise InvalidInput("shape mismatch between operator and subspace")
    if op_norm(S - adjoint(S)) > tol.tol_eq:
        raise InvalidInput("operator is not self-adjoint")
    B = V.basis
    SB = S @ B
    if op_norm(SB - B @ (adjoint(B) @ SB)) > tol.tol_eq:
        raise InvalidInput("subspace is not invariant under the operator")
    if V.dim == 0:
        return np.zeros((n, n), dtype=complex)
    C = adjoint(B) @ SB
    C = 0.5 * (C + adjoint(C))
    w = np.linalg.eigvalsh(C)
    if np.abs(w).min() <= tol.tol_rank * max(np.abs(w).max(), np.finfo(float).tiny):
        raise SingularRestriction("restriction of the operator is singular")
    return B @ np.linalg.solve(C, adjoint(B))
