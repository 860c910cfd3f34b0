"""Fusion frames and their duals.

A fusion sequence is a weighted family of subspaces ((W_i, c_i)) with
the degeneracy convention that a zero subspace carries weight zero and
vice versa. Identifying it with the operator sequence (c_i P_{W_i})
gives analysis and frame operators. Duality comes in two flavors here:
Gavruta duality (a reconstruction identity through the inverse frame
operator, not symmetric) and witnessed duality, where a family of unit
norm operators Q_i mapping W_i into V_i reassembles the identity. The
canonical witnessed dual reweights the images of the subspaces under
the inverse frame operator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateGavrutaDual,
    InvalidDualParam,
    InvalidInput,
    NotAFrame,
)
from .linalg import (
    DEFAULT_TOL,
    Subspace,
    ToleranceConfig,
    adjoint,
    as_matrix,
    kernel_basis,
    op_norm,
    proj,
)
from .ovframe import OVSequence, analysis_operator, classify, frame_operator


class FusionSequence:
    """Weighted subspaces ((W_i, c_i)) sharing one ambient dimension."""

    def __init__(self, ambient_dim: int, pairs):
        pairs = [(S, float(c)) for S, c in pairs]
        if not pairs:
            raise InvalidInput("a fusion sequence needs at least one pair")
        for S, c in pairs:
            if S.ambient_dim != ambient_dim:
                raise InvalidInput("subspace ambient dimension mismatch")
            if not np.isfinite(c) or c < 0:
                raise InvalidInput("weights must be finite and nonnegative")
            if (S.dim == 0) != (c == 0.0):
                raise InvalidInput(
                    "zero subspaces must carry weight zero and vice versa"
                )
        self.ambient_dim = ambient_dim
        self.pairs = tuple(pairs)

    @property
    def size(self) -> int:
        return len(self.pairs)

    @property
    def weights(self) -> np.ndarray:
        return np.array([c for _, c in self.pairs])

    @property
    def subspaces(self) -> list[Subspace]:
        return [S for S, _ in self.pairs]

    def degenerate_indices(self) -> set[int]:
        return {i for i, (_, c) in enumerate(self.pairs) if c == 0.0}

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        dims = [S.dim for S, _ in self.pairs]
        return f"FusionSequence(ambient={self.ambient_dim}, dims={dims})"


def degenerate_pair_indices(V: FusionSequence, W: FusionSequence) -> set[int]:
    """Indices where either sequence is degenerate."""
    if V.size != W.size:
        raise InvalidInput("fusion sequences have different lengths")
    return V.degenerate_indices() | W.degenerate_indices()


def fusion_to_ov(W: FusionSequence) -> OVSequence:
    """The operator sequence (c_i P_{W_i})."""
    return OVSequence([c * proj(S) for S, c in W.pairs])


def fusion_frame_operator(W: FusionSequence) -> np.ndarray:
    return frame_operator(fusion_to_ov(W))


def _inverse_frame_operator(W: FusionSequence, tol: ToleranceConfig) -> np.ndarray:
    report = classify(fusion_to_ov(W), tol)
    if not report.is_frame:
        raise NotAFrame("fusion sequence is not a fusion frame for the space")
    return np.linalg.inv(fusion_frame_operator(W))


def gavruta_is_dual(
    V: FusionSequence, W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> bool:
    """Reconstruction test: sum of c_i d_i P_{V_i} S_W^{-1} P_{W_i} equals
    the identity. Not symmetric in (V, W)."""
    if V.size != W.size or V.ambient_dim != W.ambient_dim:
        raise InvalidInput("fusion sequences are not compatible")
    Sinv = _inverse_frame_operator(W, tol)
    n = W.ambient_dim
    total = np.zeros((n, n), dtype=complex)
    for (VS, d), (WS, c) in zip(V.pairs, W.pairs):
        if c == 0.0 or d == 0.0:
            continue
        total += c * d * proj(VS) @ Sinv @ proj(WS)
    return op_norm(total - np.eye(n)) <= tol.tol_eq


class FFDualCheck:
    """Outcome of a witnessed duality verification; truthy iff it passed."""

    def __init__(self, ok: bool, failures: list[str], reconstruction_residual: float):
        self.ok = ok
        self.failures = tuple(failures)
        self.reconstruction_residual = reconstruction_residual

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failures": list(self.failures),
            "reconstruction_residual": self.reconstruction_residual,
        }


def ffdual_verify(
    V: FusionSequence,
    W: FusionSequence,
    Q,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> FFDualCheck:
    """Verify a witness family: each Q_i kills the complement of W_i,
    maps into V_i, has unit norm off the degenerate indices (zero on
    them), and the weighted sum reassembles the identity."""
    if V.size != W.size or V.ambient_dim != W.ambient_dim:
        raise InvalidInput("fusion sequences are not compatible")
    if not classify(fusion_to_ov(W), tol).is_frame:
        raise NotAFrame("fusion sequence is not a fusion frame for the space")
    mats = [as_matrix(Qi) for Qi in Q]
    n = W.ambient_dim
    if len(mats) != W.size or any(M.shape != (n, n) for M in mats):
        raise InvalidInput("witness family has wrong length or shapes")

    failures = []
    eye = np.eye(n)
    degenerate = degenerate_pair_indices(V, W)
    total = np.zeros((n, n), dtype=complex)
    for i, ((VS, d), (WS, c), Qi) in enumerate(zip(V.pairs, W.pairs, mats)):
        if op_norm(Qi @ (eye - proj(WS))) > tol.tol_eq:
            failures.append(f"witness {i} does not vanish on the source complement")
        if op_norm((eye - proj(VS)) @ Qi) > tol.tol_eq:
            failures.append(f"witness {i} does not map into the target subspace")
        nrm = op_norm(Qi)
        if i in degenerate:
            if nrm > tol.tol_eq:
                failures.append(f"witness {i} must vanish on a degenerate index")
        elif abs(nrm - 1.0) > tol.tol_eq:
            failures.append(f"witness {i} does not have unit norm")
        total += c * d * Qi
    residual = op_norm(total - eye)
    if residual > tol.tol_eq:
        failures.append("weighted witness sum does not reassemble the identity")
    return FFDualCheck(not failures, failures, residual)


def ffdual_from_gavruta(
    V: FusionSequence, W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
):
    """Reweight a Gavruta dual into a witnessed dual.

    The cross operators P_{V_i} S_W^{-1} P_{W_i} must only vanish on
    degenerate indices; their norms rescale the weights and their
    normalizations serve as the witness. Returns the reweighted fusion
    sequence and the witness list.
    """
    if not gavruta_is_dual(V, W, tol):
        raise InvalidInput("first sequence does not reconstruct through the second")
    Sinv = _inverse_frame_operator(W, tol)
    degenerate = degenerate_pair_indices(V, W)
    n = W.ambient_dim
    pairs = []
    witness = []
    for i, ((VS, d), (WS, _)) in enumerate(zip(V.pairs, W.pairs)):
        Ai = proj(VS) @ Sinv @ proj(WS)
        a = op_norm(Ai)
        if a <= tol.tol_eq:
            if i not in degenerate:
                raise DegenerateGavrutaDual(
                    f"cross operator {i} vanishes outside the degenerate set"
                )
            pairs.append((Subspace.zero(n), 0.0))
            witness.append(np.zeros((n, n), dtype=complex))
        else:
            pairs.append((VS, a * d))
            witness.append(Ai / a)
    return FusionSequence(n, pairs), witness


def canonical_gavruta_family(
    W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> FusionSequence:
    """The images of the subspaces under the inverse frame operator,
    keeping the original weights. Always a Gavruta dual."""
    Sinv = _inverse_frame_operator(W, tol)
    n = W.ambient_dim
    pairs = []
    for S, c in W.pairs:
        if c == 0.0:
            pairs.append((Subspace.zero(n), 0.0))
        else:
            pairs.append((Subspace.from_span(Sinv @ S.basis, tol), c))
    return FusionSequence(n, pairs)


def canonical_ffdual(
    W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> FusionSequence:
    """Canonical witnessed dual: subspaces S_W^{-1} W_i with weights
    c_i times the norm of S_W^{-1} restricted to W_i."""
    Sinv = _inverse_frame_operator(W, tol)
    n = W.ambient_dim
    pairs = []
    for S, c in W.pairs:
        if c == 0.0:
            pairs.append((Subspace.zero(n), 0.0))
        else:
            pairs.append(
                (Subspace.from_span(Sinv @ S.basis, tol), c * op_norm(Sinv @ proj(S)))
            )
    return FusionSequence(n, pairs)


def canonical_ffdual_witness(
    W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> list[np.ndarray]:
    """Witness family for the canonical dual: normalized S_W^{-1} P_{W_i}."""
    Sinv = _inverse_frame_operator(W, tol)
    n = W.ambient_dim
    out = []
    for S, c in W.pairs:
        if c == 0.0:
            out.append(np.zeros((n, n), dtype=complex))
        else:
            Ai = Sinv @ proj(S)
            out.append(Ai / op_norm(Ai))
    return out


def alternate_ffdual(
    W: FusionSequence, L, tol: ToleranceConfig = DEFAULT_TOL
):
    """Witnessed dual generated by a matrix L whose range lies in the
    kernel of the synthesis operator.

    With the blocks L_i of L, the operators (c_i S_W^{-1} + L_i^H) P_{W_i}
    define the dual subspaces (their ranges) and weights (their norms).
    Returns the fusion sequence and its witness list.
    """
    Sinv = _inverse_frame_operator(W, tol)
    n = W.ambient_dim
    L = as_matrix(L)
    T = analysis_operator(fusion_to_ov(W))
    if L.shape != T.shape:
        raise InvalidDualParam(f"parameter shape {L.shape} does not match {T.shape}")
    if op_norm(adjoint(T) @ L) > tol.tol_eq * max(1.0, op_norm(L)):
        raise InvalidDualParam("parameter range is not inside the synthesis kernel")
    pairs = []
    witness = []
    for i, (S, c) in enumerate(W.pairs):
        Li = L[i * n : (i + 1) * n, :]
        Ai = (c * Sinv + adjoint(Li)) @ proj(S)
        a = op_norm(Ai)
        if a <= tol.tol_eq:
            pairs.append((Subspace.zero(n), 0.0))
            witness.append(np.zeros((n, n), dtype=complex))
        else:
            pairs.append((Subspace.from_span(Ai, tol), a))
            witness.append(Ai / a)
    return FusionSequence(n, pairs), witness


def ffdual_characterize(
    V: FusionSequence, W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
):
    """Search for a witness certifying V as a dual of W.

    Looks for blocks L_i with synthesis orthogonality such that the
    operators (c_i S_W^{-1} + L_i^H) P_{W_i} map into the V_i and have
    norms matching the weights of V. The range constraints are linear
    and solved by least squares over the kernel parametrization; the
    norm constraints are checked afterwards. Returns (L blocks, witness
    list) on success and None when no witness was found; a miss means
    the search failed, not that V is certified to be a non-dual.
    """
    if V.size != W.size or V.ambient_dim != W.ambient_dim:
        raise InvalidInput("fusion sequences are not compatible")
    Sinv = _inverse_frame_operator(W, tol)
    n = W.ambient_dim
    m = W.size
    T = analysis_operator(fusion_to_ov(W))
    K = kernel_basis(adjoint(T), tol).basis
    p = K.shape[1]
    eye = np.eye(n)

    # Unknown Y (n x p) with L_i^H = Y K_i^H; range constraints
    # (I - P_{V_i}) (c_i Sinv + Y K_i^H) P_{W_i} = 0 are linear in Y.
    if p > 0:
        rows = []
        rhs = []
        for i in range(m):
            VS, _ = V.pairs[i]
            WS, c = W.pairs[i]
            if WS.dim == 0:
                continue
            Ki = K[i * n : (i + 1) * n, :]
            left = eye - proj(VS)
            right = adjoint(Ki) @ proj(WS)
            rows.append(np.kron(right.T, left))
            rhs.append((-c * left @ Sinv @ proj(WS)).ravel(order="F"))
        if rows:
            M = np.vstack(rows)
            r = np.concatenate(rhs)
            # Rank cutoff keeps near-null constraint directions from
            # blowing up the minimum norm solution.
            y, *_ = np.linalg.lstsq(M, r, rcond=tol.tol_rank)
            Y = y.reshape(n, p, order="F")
        else:
            Y = np.zeros((n, p), dtype=complex)
    else:
        Y = np.zeros((n, 0), dtype=complex)

    L_blocks = []
    witness = []
    degenerate = degenerate_pair_indices(V, W)
    max_weight = max(V.weights.max(), 1.0)
    for i in range(m):
        VS, d = V.pairs[i]
        WS, c = W.pairs[i]
        Ki = K[i * n : (i + 1) * n, :] if p else np.zeros((n, 0), dtype=complex)
        Li = Ki @ adjoint(Y)
        Ai = (c * Sinv + adjoint(Li)) @ proj(WS)
        if op_norm((eye - proj(VS)) @ Ai) > tol.tol_eq:
            return None
        a = op_norm(Ai)
        if i in degenerate:
            if a > tol.tol_eq:
                return None
            witness.append(np.zeros((n, n), dtype=complex))
        else:
            if abs(a - d) > tol.tol_eq * max_weight:
                return None
            witness.append(Ai / d)
        L_blocks.append(Li)
    return L_blocks, witness


@dataclass(frozen=True)
class TightDecomposition:
    """Partition of the index set into mutually orthogonal tight pieces;
    each group carries its tightness constant."""

    groups: tuple[tuple[tuple[int, ...], float], ...]
    degenerate: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "groups": [
                {"indices": list(ix), "tightness": lam} for ix, lam in self.groups
            ],
            "degenerate": list(self.degenerate),
        }


def tight_orthogonal_decomposition(
    W: FusionSequence, tol: ToleranceConfig = DEFAULT_TOL
) -> TightDecomposition | None:
    """Decide whether the sequence splits into mutually orthogonal tight
    pieces, equivalently whether each subspace sits inside an eigenspace
    of the frame operator. Returns the grouping by eigenvalue, or None.
    This is exactly the case in which the canonical operator-valued dual
    of (c_i P_{W_i}) is again a fusion sequence."""
    S = fusion_frame_operator(W)
    lams = {}
    degenerate = []
    for i, (WS, c) in enumerate(W.pairs):
        if c == 0.0:
            degenerate.append(i)
            continue
        B = WS.basis
        E = S @ B
        lam = float(np.real(np.trace(adjoint(B) @ E)) / WS.dim)
        if lam <= tol.tol_eq or op_norm(E - lam * B) > tol.tol_eq * max(1.0, lam):
            return None
        lams[i] = lam
    groups = []
    for i in sorted(lams, key=lambda j: lams[j]):
        if groups and abs(lams[i] - groups[-1][1][-1]) <= tol.tol_eq * max(1.0, lams[i]):
            groups[-1][0].append(i)
            groups[-1][1].append(lams[i])
        else:
            groups.append(([i], [lams[i]]))
    return TightDecomposition(
        groups=tuple((tuple(ix), float(np.mean(vals))) for ix, vals in groups),
        degenerate=tuple(degenerate),
    )


@dataclass(frozen=True)
class DesiderataReport:
    reconstruction: bool
    vector_lift: bool
    vector_extraction: bool
    dual_is_frame_and_symmetric: bool
    canonical_verifies: bool
    trials: int
    failures: tuple[str, ...]

    def all_pass(self) -> bool:
        return (
            self.reconstruction
            and self.vector_lift
            and self.vector_extraction
            and self.dual_is_frame_and_symmetric
            and self.canonical_verifies
        )

    def to_dict(self) -> dict:
        d = self.__dict__.copy()
        d["failures"] = list(self.failures)
        d["all_pass"] = self.all_pass()
        return d


def desiderata_suite(
    tol: ToleranceConfig = DEFAULT_TOL, trials: int = 100, seed: int = 42
) -> DesiderataReport:
    """Randomized exercise of the four duality desiderata:
    reconstruction, generalization of vector frame duals in both
    directions, symmetry plus frame property of witnessed duals, and
    verification of the canonical dual."""
    from . import randgen
    from .ovframe import from_vectors, is_dual, make_dual

    rng = np.random.default_rng(seed)
    failures = []
    ok = {"d1": True, "d2a": True, "d2b": True, "d3": True, "d4": True}

    for trial in range(trials):
        n = int(rng.integers(2, 6))

        # Vector frame with a random alternate dual, lifted to fusion pairs.
        m = int(rng.integers(n, n + 4))
        phis = [randgen.random_vector(rng, n) for _ in range(m)]
        A = from_vectors(phis)
        L = randgen.random_dual_param(rng, A, tol=tol)
        psis = [b.conj().ravel() for b in make_dual(A, L, tol).blocks]

        W_pairs, V_pairs, Q = [], [], []
        for phi, psi in zip(phis, psis):
            np_phi, np_psi = np.linalg.norm(phi), np.linalg.norm(psi)
            if np_phi < 1e-12:
                W_pairs.append((Subspace.zero(n), 0.0))
            else:
                W_pairs.append((Subspace.from_span(phi[:, None], tol), np_phi))
            if np_psi < 1e-12:
                V_pairs.append((Subspace.zero(n), 0.0))
            else:
                V_pairs.append((Subspace.from_span(psi[:, None], tol), np_psi))
            if np_phi < 1e-12 or np_psi < 1e-12:
                Q.append(np.zeros((n, n), dtype=complex))
            else:
                Q.append(np.outer(psi / np_psi, phi.conj() / np_phi))
        Wf = FusionSequence(n, W_pairs)
        Vf = FusionSequence(n, V_pairs)
        if not ffdual_verify(Vf, Wf, Q, tol):
            ok["d2a"] = False
            failures.append(f"trial {trial}: vector lift failed")

        # Extraction: pick representatives and check vector duality.
        phis2, psis2 = [], []
        for (WS, c), (VS, d), Qi in zip(Wf.pairs, Vf.pairs, Q):
            if c == 0.0:
                phis2.append(np.zeros(n, dtype=complex))
                psis2.append(VS.basis[:, 0] * d if d > 0 else np.zeros(n, dtype=complex))
            else:
                phi2 = c * WS.basis[:, 0]
                phis2.append(phi2)
                psis2.append((d / c) * (Qi @ phi2))
        if not is_dual(from_vectors(phis2), from_vectors(psis2), tol):
            ok["d2b"] = False
            failures.append(f"trial {trial}: vector extraction failed")

        # Random fusion frame: reconstruction, symmetry, canonical dual.
        Wr = randgen.random_fusion_frame(rng, n, int(rng.integers(2, 6)))
        dual = canonical_ffdual(Wr, tol)
        Qc = canonical_ffdual_witness(Wr, tol)

        x = randgen.random_vector(rng, n)
        measurements = [c * proj(S) @ x for S, c in Wr.pairs]
        xhat = sum(
            d * Qi @ y
            for (_, d), Qi, y in zip(dual.pairs, Qc, measurements)
        )
        if np.linalg.norm(xhat - x) > tol.tol_eq * max(1.0, np.linalg.norm(x)):
            ok["d1"] = False
            failures.append(f"trial {trial}: reconstruction failed")

        check = ffdual_verify(dual, Wr, Qc, tol)
        if not check:
            ok["d4"] = False
            failures.append(f"trial {trial}: canonical dual failed: {check.failures}")

        sym = ffdual_verify(Wr, dual, [adjoint(Qi) for Qi in Qc], tol)
        dual_frame = classify(fusion_to_ov(dual), tol).is_frame
        if not (sym and dual_frame):
            ok["d3"] = False
            failures.append(f"trial {trial}: symmetry or frame property failed")

    return DesiderataReport(
        reconstruction=ok["d1"],
        vector_lift=ok["d2a"],
        vector_extraction=ok["d2b"],
        dual_is_frame_and_symmetric=ok["d3"],
        canonical_verifies=ok["d4"],
        trials=trials,
        failures=tuple(failures),
    )
