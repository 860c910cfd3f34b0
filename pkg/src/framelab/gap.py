"""Subspace geometry: directed gap, infimum cosine angle, symmetric gap.

The directed gap from V to W is the norm of the restriction of the
projection onto W-perp to V; the symmetric gap is the maximum of the
two directions and coincides with the norm of the projector difference.
Conventions for the zero subspace: the gap from {0} to anything is 0
(supremum over an empty unit sphere), the gap from a nonzero V to {0}
is 1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInput
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    adjoint,
    as_matrix,
    min_nonzero_sv,
    op_norm,
    proj,
    range_basis,
)


def _check_ambient(V: Subspace, W: Subspace):
    if V.ambient_dim != W.ambient_dim:
        raise InvalidInput("subspaces live in different ambient dimensions")


def gap_delta(V: Subspace, W: Subspace) -> float:
    """Directed gap from V to W, in [0, 1]."""
    _check_ambient(V, W)
    if V.dim == 0:
        return 0.0
    resid = V.basis - W.basis @ (adjoint(W.basis) @ V.basis)
    return min(op_norm(resid), 1.0)


def inf_cosine(V: Subspace, W: Subspace) -> float:
    """Infimum of the norm of the projection onto W over unit vectors of V."""
    _check_ambient(V, W)
    if V.dim == 0:
        return 1.0
    G = adjoint(W.basis) @ V.basis
    w = np.linalg.eigvalsh(adjoint(G) @ G)
    return float(np.sqrt(max(w.min(), 0.0)))


@dataclass(frozen=True)
class GapReport:
    delta_vw: float
    delta_wv: float
    r_vw: float
    delta_max: float
    below_one: bool
    projector_residual: float

    def to_dict(self) -> dict:
        return {
            "delta_vw": self.delta_vw,
            "delta_wv": self.delta_wv,
            "R_vw": self.r_vw,
            "Delta": self.delta_max,
            "below_one": self.below_one,
            "projector_residual": self.projector_residual,
        }


def gap_Delta(V: Subspace, W: Subspace, tol: ToleranceConfig = DEFAULT_TOL) -> GapReport:
    """Full gap report; the symmetric gap is cross-checked against the
    projector difference and the discrepancy recorded."""
    _check_ambient(V, W)
    d_vw = gap_delta(V, W)
    d_wv = gap_delta(W, V)
    delta_max = max(d_vw, d_wv)
    pdiff = op_norm(proj(V) - proj(W))
    return GapReport(
        delta_vw=d_vw,
        delta_wv=d_wv,
        r_vw=inf_cosine(V, W),
        delta_max=delta_max,
        below_one=delta_max < 1.0 - tol.tol_eq,
        projector_residual=abs(delta_max - pdiff),
    )


def gap_range_bound(T, S, c: float, tol: ToleranceConfig = DEFAULT_TOL):
    """Bound on the directed gap between ranges of nearby operators.

    For T bounded below by c on the complement of its kernel, the gap
    from ran T to ran S is at most ||T - S|| / c. Returns
    (bound, measured).
    """
    T = as_matrix(T)
    S = as_matrix(S)
    if T.shape != S.shape:
        raise InvalidInput("operators must have identical shapes")
    if c <= 0 or c > min_nonzero_sv(T, tol) + tol.tol_eq:
        raise InvalidInput("c does not bound the operator below")
    bound = op_norm(T - S) / c
    measured = gap_delta(range_basis(T, tol), range_basis(S, tol))
    return bound, measured


@dataclass(frozen=True)
class GapLemmaReport:
    """Consequences of small gaps, with flags left None when the
    corresponding hypothesis fails."""

    delta_vw: float
    delta_wv: float
    delta_max: float
    intersection_trivial: bool | None
    bounded_below: bool | None
    deltas_equal: bool | None
    isomorphisms: bool | None

    def to_dict(self) -> dict:
        return self.__dict__.copy()


def bounded_below_consequences(
    V: Subspace, W: Subspace, tol: ToleranceConfig = DEFAULT_TOL
) -> GapLemmaReport:
    """Check that a directed gap below one forces trivial intersection
    with the complement, and that a symmetric gap below one forces
    equal directed gaps and invertible restricted projections."""
    _check_ambient(V, W)
    d_vw = gap_delta(V, W)
    d_wv = gap_delta(W, V)
    delta_max = max(d_vw, d_wv)

    intersection_trivial = None
    bounded_below = None
    if d_vw < 1.0 - tol.tol_eq:
        r = inf_cosine(V, W)
        bounded_below = r > tol.tol_eq
        intersection_trivial = bounded_below

    deltas_equal = None
    isomorphisms = None
    if delta_max < 1.0 - tol.tol_eq:
        deltas_equal = abs(d_vw - d_wv) <= tol.tol_eq
        isomorphisms = (
            V.dim == W.dim
            and inf_cosine(V, W) > tol.tol_eq
            and inf_cosine(W, V) > tol.tol_eq
        )

    return GapLemmaReport(
        delta_vw=d_vw,
        delta_wv=d_wv,
        delta_max=delta_max,
        intersection_trivial=intersection_trivial,
        bounded_below=bounded_below,
        deltas_equal=deltas_equal,
        isomorphisms=isomorphisms,
    )
