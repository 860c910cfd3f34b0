"""JSON encodings for matrices, operator sequences and fusion sequences.

Matrix: {"rows": n, "cols": m, "data": [...]} with row-major data, each
entry either a real number or an [re, im] pair; an all-real matrix may
use the plain-number form and is promoted to complex on load.

Operator sequence: {"domain_dim": n, "codomain_dim": k, "blocks": [...]}
with Matrix-encoded blocks, or the vector shorthand
{"vectors": [[...], ...]}.

Fusion sequence: {"ambient_dim": n, "pairs": [{"basis": Matrix,
"weight": c}, ...]}; a zero subspace is a basis with zero columns.

Witness family: {"Q": [Matrix, ...]}.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .fusion import FusionSequence
from .linalg import Subspace, as_matrix
from .ovframe import OVSequence, from_vectors


def _scalar_to_obj(z: complex):
    if z.imag == 0.0:
        return z.real
    return [z.real, z.imag]


def _scalar_from_obj(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, list) and len(obj) == 2:
        return complex(obj[0], obj[1])
    raise InvalidInput(f"not a scalar encoding: {obj!r}")


def matrix_to_obj(M) -> dict:
    M = as_matrix(M)
    if np.all(M.imag == 0.0):
        data = [float(x) for x in M.real.ravel()]
    else:
        data = [[float(z.real), float(z.imag)] for z in M.ravel()]
    return {"rows": M.shape[0], "cols": M.shape[1], "data": data}


def matrix_from_obj(obj) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed matrix object: {exc}") from exc
    if len(data) != rows * cols:
        raise InvalidInput("matrix data length does not match rows*cols")
    flat = [_scalar_from_obj(x) for x in data]
    return as_matrix(np.array(flat, dtype=complex).reshape(rows, cols))


def vector_from_obj(obj) -> np.ndarray:
    if not isinstance(obj, list):
        raise InvalidInput("vector must be a list")
    return np.array([_scalar_from_obj(x) for x in obj], dtype=complex)


def ov_to_obj(A: OVSequence) -> dict:
    return {
        "domain_dim": A.domain_dim,
        "codomain_dim": A.codomain_dim,
        "blocks": [matrix_to_obj(b) for b in A.blocks],
    }


def ov_from_obj(obj) -> OVSequence:
    if "vectors" in obj:
        return from_vectors([vector_from_obj(v) for v in obj["vectors"]])
    try:
        blocks = [matrix_from_obj(b) for b in obj["blocks"]]
    except KeyError as exc:
        raise InvalidInput("operator sequence needs 'blocks' or 'vectors'") from exc
    A = OVSequence(blocks)
    for key, have in (("domain_dim", A.domain_dim), ("codomain_dim", A.codomain_dim)):
        if key in obj and int(obj[key]) != have:
            raise InvalidInput(f"{key} does not match the block shapes")
    return A


def fusion_to_obj(W: FusionSequence) -> dict:
    return {
        "ambient_dim": W.ambient_dim,
        "pairs": [
            {"basis": matrix_to_obj(S.basis), "weight": c} for S, c in W.pairs
        ],
    }


def fusion_from_obj(obj) -> FusionSequence:
    try:
        n = int(obj["ambient_dim"])
        raw = obj["pairs"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed fusion sequence object: {exc}") from exc
    pairs = []
    for item in raw:
        basis = matrix_from_obj(item["basis"])
        pairs.append((Subspace(n, basis), float(item["weight"])))
    return FusionSequence(n, pairs)


def witness_to_obj(Q) -> dict:
    return {"Q": [matrix_to_obj(M) for M in Q]}


def witness_from_obj(obj) -> list[np.ndarray]:
    try:
        return [matrix_from_obj(M) for M in obj["Q"]]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed witness object: {exc}") from exc


def load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read JSON from {path}: {exc}") from exc


def load_sequence(path):
    """Load either an operator sequence or a fusion sequence, deciding
    by the keys present."""
    obj = load_json(path)
    if "pairs" in obj:
        return fusion_from_obj(obj)
    return ov_from_obj(obj)


def dumps(obj) -> str:
    """Deterministic JSON text: fixed key order, exact round-trip floats."""
    return json.dumps(obj, indent=2, sort_keys=False, allow_nan=False)
