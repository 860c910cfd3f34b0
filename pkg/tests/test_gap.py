import numpy as np
import pytest

from framelab import (
    InvalidInput,
    Subspace,
    bounded_below_consequences,
    gap_delta,
    gap_Delta,
    gap_range_bound,
    inf_cosine,
    op_norm,
    proj,
    range_basis,
)
from framelab import analysis_operator, mu
from framelab.reference import mercedes_frame, mercedes_perturbed


def line(theta):
    return Subspace(2, np.array([[np.cos(theta)], [np.sin(theta)]]))


def random_subspace(rng, n, r):
    if r == 0:
        return Subspace.zero(n)
    return Subspace.from_span(rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r)))


def test_gap_delta_equal_subspaces():
    S = line(0.3)
    assert gap_delta(S, S) == pytest.approx(0.0, abs=1e-12)


def test_gap_delta_rotated_line():
    assert gap_delta(line(0.0), line(np.pi / 4)) == pytest.approx(np.sqrt(2) / 2)


def test_gap_delta_orthogonal_lines():
    assert gap_delta(line(0.0), line(np.pi / 2)) == pytest.approx(1.0)


def test_gap_delta_ambient_mismatch():
    with pytest.raises(InvalidInput):
        gap_delta(line(0.0), Subspace.full(3))


def test_gap_delta_zero_conventions():
    assert gap_delta(Subspace.zero(2), line(0.1)) == 0.0
    assert gap_delta(line(0.1), Subspace.zero(2)) == pytest.approx(1.0)


def test_gap_Delta_equal():
    rep = gap_Delta(line(0.7), line(0.7))
    assert rep.delta_max == pytest.approx(0.0, abs=1e-12)
    assert rep.below_one


def test_gap_Delta_lines_sine():
    theta = 0.4
    rep = gap_Delta(line(0.0), line(theta))
    assert rep.delta_max == pytest.approx(np.sin(theta))


def test_gap_Delta_unequal_dims_is_one(rng):
    for _ in range(30):
        n = int(rng.integers(2, 7))
        r1 = int(rng.integers(1, n + 1))
        r2 = int(rng.integers(1, n + 1))
        if r1 == r2:
            continue
        V = random_subspace(rng, n, r1)
        W = random_subspace(rng, n, r2)
        rep = gap_Delta(V, W)
        # Independent check by plain SVD of the projector difference.
        oracle = np.linalg.norm(proj(V) - proj(W), 2)
        assert rep.delta_max == pytest.approx(1.0, abs=1e-9)
        assert oracle == pytest.approx(1.0, abs=1e-9)


def test_perp_identity_random(rng):
    for _ in range(500):
        n = int(rng.integers(2, 7))
        V = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        W = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        assert gap_delta(W.perp(), V.perp()) == pytest.approx(gap_delta(V, W), abs=1e-9)


def test_max_gap_equals_projector_norm(rng):
    for _ in range(200):
        n = int(rng.integers(2, 7))
        V = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        W = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        assert gap_Delta(V, W).projector_residual < 1e-9


def test_small_gap_forces_equal_deltas(rng):
    for _ in range(200):
        n = int(rng.integers(2, 7))
        V = random_subspace(rng, n, int(rng.integers(1, n + 1)))
        W = random_subspace(rng, n, int(rng.integers(1, n + 1)))
        rep = gap_Delta(V, W)
        if rep.delta_max < 1.0 - 1e-8:
            assert abs(rep.delta_vw - rep.delta_wv) < 1e-9


def test_transfer_identity_random(rng):
    for _ in range(200):
        n = int(rng.integers(2, 7))
        V = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        W = random_subspace(rng, n, int(rng.integers(0, n + 1)))
        d = gap_delta(V, W)
        r = inf_cosine(V, W)
        assert r**2 + d**2 == pytest.approx(1.0, abs=1e-9)


def test_gap_range_bound_equal():
    T = np.eye(3)
    bound, measured = gap_range_bound(T, T, 1.0)
    assert bound == 0.0 and measured == pytest.approx(0.0, abs=1e-12)


def test_gap_range_bound_mercedes():
    eps = 0.2
    TA = analysis_operator(mercedes_frame())
    TB = analysis_operator(mercedes_perturbed(eps))
    delta = 1 - np.sqrt(1 - eps**2)
    bound, measured = gap_range_bound(TA, TB, 1.0)
    assert bound == pytest.approx(2 * np.sqrt(delta / 3), abs=1e-12)
    assert measured <= bound + 1e-9


def test_gap_range_bound_random_sweep(rng):
    for _ in range(500):
        rows = int(rng.integers(3, 8))
        cols = int(rng.integers(2, rows + 1))
        U = np.linalg.qr(rng.standard_normal((rows, rows)))[0][:, :cols]
        V = np.linalg.qr(rng.standard_normal((cols, cols)))[0]
        T = U @ np.diag(rng.uniform(0.8, 1.5, cols)) @ V.T
        S = T + 0.3 * rng.standard_normal((rows, cols)) / np.sqrt(rows)
        c = float(np.linalg.svd(T, compute_uv=False)[-1])
        bound, measured = gap_range_bound(T, S, c)
        assert measured <= bound + 1e-9


def test_gap_range_bound_rejects_bad_c():
    with pytest.raises(InvalidInput):
        gap_range_bound(np.eye(2), np.eye(2), 5.0)


def test_bounded_below_equal_subspaces():
    rep = bounded_below_consequences(line(0.2), line(0.2))
    assert rep.intersection_trivial and rep.deltas_equal and rep.isomorphisms


def test_bounded_below_tilted_lines():
    rep = bounded_below_consequences(line(0.0), line(np.pi / 3))
    assert rep.delta_vw == pytest.approx(np.sin(np.pi / 3))
    assert rep.deltas_equal
    assert rep.isomorphisms


def test_bounded_below_orthogonal_not_asserted():
    rep = bounded_below_consequences(line(0.0), line(np.pi / 2))
    assert rep.intersection_trivial is None
    assert rep.deltas_equal is None
    assert rep.isomorphisms is None
