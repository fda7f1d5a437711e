"""Block constructions of reflexive generalized inverses with guaranteed sparsity.

Symmetric block solution: for symmetric A of rank r and a nonsingular r x r
principal block A[S], H is zero except H[S, S] = A[S]^{-1}.

Column block solution: for a full-column-rank m x r column block A[:, T],
H is zero except rows T, which hold A[:, T]^+.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .errors import (DimensionMismatch, NotSymmetric, RankDeficient, RankDeficientBlock,
                     SingularBlock, SingularMatrix, WrongBlockSize)
from .linalg import FLOAT_RTOL, as_matrix, invert_small, is_exact, is_symmetric, max_norm, one_norm, rank, zeros
from .serialize import matrix_to_json, scalar_to_json

SYMMETRIC_BLOCK = "symmetric_block"
COLUMN_BLOCK = "column_block"
LP = "lp"


@dataclass(frozen=True)
class Provenance:
    kind: str
    indices: tuple | None = None
    formulation: str | None = None

    def to_dict(self):
        d = {"kind": self.kind}
        if self.indices is not None:
            d["indices"] = list(self.indices)
        if self.formulation is not None:
            d["formulation"] = self.formulation
        return d


@dataclass(frozen=True)
class GinvSolution:
    H: np.ndarray = field(repr=False)
    provenance: Provenance
    one_norm: object

    def to_dict(self):
        return {"H": matrix_to_json(self.H), "provenance": self.provenance.to_dict(),
                "one_norm": scalar_to_json(self.one_norm)}


def _check_indices(idx, n, what):
    idx = tuple(sorted(int(i) for i in idx))
    if len(set(idx)) != len(idx):
        raise WrongBlockSize(f"repeated index in {what}")
    if idx and (idx[0] < 0 or idx[-1] >= n):
        raise DimensionMismatch(f"{what} index out of range 0..{n - 1}")
    return idx


def symmetric_block(A, S, r=None) -> GinvSolution:
    A = as_matrix(A)
    if not is_symmetric(A):
        raise NotSymmetric("symmetric block construction needs a symmetric matrix")
    n = A.shape[0]
    S = _check_indices(S, n, "S")
    if r is None:
        r = rank(A)
    if len(S) != r:
        raise WrongBlockSize(f"|S| = {len(S)} but rank(A) = {r}")
    if _numerically_singular(A, A[np.ix_(S, S)]):
        raise SingularBlock(f"principal block {S} is singular")
    try:
        inv = invert_small(A[np.ix_(S, S)])
    except SingularMatrix as exc:
        raise SingularBlock(f"principal block {S} is singular") from exc
    H = zeros((n, n), A)
    H[np.ix_(S, S)] = inv
    return GinvSolution(H, Provenance(SYMMETRIC_BLOCK, S), one_norm(inv))


def column_block(A, T, r=None) -> GinvSolution:
    A = as_matrix(A)
    m, n = A.shape
    # the embedded H does not depend on the order of T
    T = _check_indices(T, n, "T")
    if r is None:
        r = rank(A)
    if len(T) != r:
        raise WrongBlockSize(f"|T| = {len(T)} but rank(A) = {r}")
    Ahat = A[:, list(T)]
    if _numerically_singular(A, Ahat):
        raise RankDeficientBlock(f"columns {T} are linearly dependent")
    try:
        Hhat = invert_small(Ahat.T @ Ahat) @ Ahat.T
    except (SingularMatrix, RankDeficient) as exc:
        raise RankDeficientBlock(f"columns {T} are linearly dependent") from exc
    H = zeros((n, m), A)
    H[list(T), :] = Hhat
    return GinvSolution(H, Provenance(COLUMN_BLOCK, T), one_norm(Hhat))


def _numerically_singular(A, block):
    # float mode: judge rank with the tolerance of the whole matrix, not the block
    return not is_exact(A) and rank(block, FLOAT_RTOL * max_norm(A)) < min(block.shape)


def symmetric_block_norm(A, S):
    """||A[S]^{-1}||_1, or None when A[S] is singular."""
    if _numerically_singular(A, A[np.ix_(S, S)]):
        return None
    try:
        return one_norm(invert_small(A[np.ix_(S, S)]))
    except SingularMatrix:
        return None


def column_block_norm(A, T):
    """||A[:, T]^+||_1, or None when A[:, T] is rank deficient."""
    Ahat = A[:, list(T)]
    if _numerically_singular(A, Ahat):
        return None
    try:
        return one_norm(invert_small(Ahat.T @ Ahat) @ Ahat.T)
    except SingularMatrix:
        return None


def enumerate_symmetric_blocks(A, r):
    """Yield (S, ||A[S]^{-1}||_1) for every nonsingular r x r principal block, lexicographically."""
    for S in combinations(range(A.shape[0]), r):
        nrm = symmetric_block_norm(A, S)
        if nrm is not None:
            yield S, nrm


def enumerate_column_blocks(A, r):
    """Yield (T, ||A[:, T]^+||_1) for every full-rank m x r column block, lexicographically."""
    for T in combinations(range(A.shape[1]), r):
        nrm = column_block_norm(A, T)
        if nrm is not None:
            yield T, nrm
