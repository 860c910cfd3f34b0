import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from framelab import (
    DegenerateInput,
    InvalidInput,
    SingularRestriction,
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
from framelab.linalg import as_matrix


def test_op_norm_identity():
    assert op_norm(np.eye(3)) == pytest.approx(1.0)


def test_op_norm_empty_and_zero():
    assert op_norm(np.zeros((2, 5))) == 0.0
    assert op_norm(np.zeros((0, 3))) == 0.0


def test_op_norm_diagonal():
    assert op_norm(np.diag([3.0, -4.0])) == pytest.approx(4.0)


def test_op_norm_rejects_nonfinite():
    with pytest.raises(InvalidInput):
        op_norm(np.array([[np.nan, 0.0], [0.0, 1.0]]))


def test_min_nonzero_sv_identity():
    assert min_nonzero_sv(np.eye(3)) == pytest.approx(1.0)


def test_min_nonzero_sv_drops_below_cutoff():
    assert min_nonzero_sv(np.diag([2.0, 1e-16])) == pytest.approx(2.0)


def test_min_nonzero_sv_zero_matrix():
    with pytest.raises(DegenerateInput):
        min_nonzero_sv(np.zeros((3, 3)))


def test_range_kernel_identity():
    R = range_basis(np.eye(2))
    K = kernel_basis(np.eye(2))
    assert R.dim == 2 and K.dim == 0


def test_range_kernel_zero():
    Z = np.zeros((3, 3))
    assert range_basis(Z).dim == 0
    assert kernel_basis(Z).dim == 3


def test_range_kernel_rank_one():
    M = np.zeros((3, 3))
    M[0, 0] = 1.0
    R = range_basis(M)
    K = kernel_basis(M)
    assert R.dim == 1
    assert np.abs(np.abs(R.basis[0, 0]) - 1.0) < 1e-12
    assert K.dim == 2
    assert np.abs(K.basis[0, :]).max() < 1e-12


def test_rank_sum_law_random(rng):
    for _ in range(1000):
        rows = int(rng.integers(1, 13))
        cols = int(rng.integers(1, 13))
        r = int(rng.integers(0, min(rows, cols) + 1))
        U = np.linalg.qr(rng.standard_normal((rows, rows)))[0][:, :r]
        V = np.linalg.qr(rng.standard_normal((cols, cols)))[0][:, :r]
        M = U @ np.diag(rng.uniform(0.5, 2.0, r)) @ V.T
        assert range_basis(M).dim + kernel_basis(M).dim == cols


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 8), st.integers(1, 8))
def test_norm_adjoint_invariance(seed, rows, cols):
    g = np.random.default_rng(seed)
    M = g.standard_normal((rows, cols)) + 1j * g.standard_normal((rows, cols))
    assert op_norm(M) == pytest.approx(op_norm(adjoint(M)), abs=1e-10)


def test_adjoint_involution_exact(rng):
    M = rng.standard_normal((4, 6)) + 1j * rng.standard_normal((4, 6))
    assert np.array_equal(adjoint(adjoint(M)), M)


def test_proj_line():
    S = Subspace(2, np.array([[1.0], [0.0]]))
    assert np.allclose(proj(S), [[1, 0], [0, 0]])


def test_proj_full_space():
    assert np.allclose(proj(Subspace.full(3)), np.eye(3))


def test_proj_diagonal_line():
    v = np.array([[1.0], [1.0]]) / np.sqrt(2)
    assert np.allclose(proj(Subspace(2, v)), [[0.5, 0.5], [0.5, 0.5]])


def test_proj_idempotent_selfadjoint(rng):
    for _ in range(50):
        n = int(rng.integers(1, 8))
        r = int(rng.integers(0, n + 1))
        S = Subspace.from_span(rng.standard_normal((n, max(r, 1)))[:, :r] if r else np.zeros((n, 0)))
        P = proj(S)
        assert op_norm(P @ P - P) < 1e-12
        assert op_norm(P - adjoint(P)) < 1e-12


def test_restricted_inverse_identity_full():
    out = restricted_inverse(np.eye(3), Subspace.full(3))
    assert np.allclose(out, np.eye(3))


def test_restricted_inverse_diagonal_line():
    S = np.diag([2.0, 3.0])
    out = restricted_inverse(S, Subspace(2, np.array([[1.0], [0.0]])))
    assert np.allclose(out, np.diag([0.5, 0.0]))


def test_restricted_inverse_double_identity():
    # Two copies of the whole plane have frame operator 2 I.
    out = restricted_inverse(2.0 * np.eye(2), Subspace.full(2))
    assert np.allclose(out, 0.5 * np.eye(2))


def test_restricted_inverse_compositions(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        r = int(rng.integers(1, n + 1))
        Q = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))[0]
        V = Subspace(n, Q[:, :r])
        # Self-adjoint with V invariant: assemble from eigenpieces.
        w_in = rng.uniform(0.5, 2.0, r)
        w_out = rng.uniform(0.5, 2.0, n - r)
        S = Q[:, :r] @ np.diag(w_in) @ adjoint(Q[:, :r])
        if n - r:
            S = S + Q[:, r:] @ np.diag(w_out) @ adjoint(Q[:, r:])
        P = proj(V)
        R = restricted_inverse(S, V)
        assert op_norm(R @ S @ P - P) < 1e-10
        assert op_norm(S @ R - P) < 1e-10


def test_restricted_inverse_zero_subspace():
    out = restricted_inverse(np.eye(3), Subspace.zero(3))
    assert np.allclose(out, np.zeros((3, 3)))


def test_restricted_inverse_rejects_nonselfadjoint():
    with pytest.raises(InvalidInput):
        restricted_inverse(np.array([[0.0, 1.0], [0.0, 0.0]]), Subspace.full(2))


def test_restricted_inverse_rejects_noninvariant():
    S = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(InvalidInput):
        restricted_inverse(S, Subspace(2, np.array([[1.0], [0.0]])))


def test_restricted_inverse_singular():
    S = np.diag([1.0, 0.0])
    with pytest.raises(SingularRestriction):
        restricted_inverse(S, Subspace.full(2))


def test_subspace_validation():
    with pytest.raises(InvalidInput):
        Subspace(2, np.array([[1.0], [1.0]]))  # not unit norm
    with pytest.raises(InvalidInput):
        Subspace(2, np.eye(3))  # ambient mismatch


def test_subspace_from_span_reorthonormalizes(rng):
    M = rng.standard_normal((5, 3)) @ np.diag([1.0, 2.0, 3.0])
    S = Subspace.from_span(M)
    assert S.dim == 3
    assert op_norm(adjoint(S.basis) @ S.basis - np.eye(3)) < 1e-12


def test_subspace_perp_dims(rng):
    S = Subspace.from_span(rng.standard_normal((6, 2)))
    P = S.perp()
    assert P.dim == 4
    assert op_norm(adjoint(P.basis) @ S.basis) < 1e-12


def test_subspace_contains():
    full = Subspace.full(3)
    line = Subspace(3, np.eye(3)[:, :1])
    assert full.contains(line)
    assert not line.contains(full)
    assert line.contains(Subspace.zero(3))


def test_tolerance_config_validation():
    with pytest.raises(InvalidInput):
        ToleranceConfig(tol_rank=0.0)
    with pytest.raises(InvalidInput):
        ToleranceConfig(tol_rank=2.0)
    with pytest.raises(InvalidInput):
        ToleranceConfig(tol_eq=-1.0)


def test_as_matrix_promotes_real():
    M = as_matrix([[1, 2], [3, 4]])
    assert M.dtype == complex
    assert np.array_equal(M.imag, np.zeros((2, 2)))
