"""Closed-form dual certificates and the rank-2 ah-symmetric column conditions.

A certificate for the plain problem is a matrix W (m x n) with
||A^T W A^T||_max <= 1; for the ah-symmetric problem it is a pair (W, U),
U skew-symmetric, with ||A^T W A^T + A^T U||_max <= 1. Either way <A, W> is a
lower bound on the minimum 1-norm, so a feasible certificate whose objective
equals the 1-norm of a feasible H proves H optimal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .blocks import column_block_norm, enumerate_column_blocks, enumerate_symmetric_blocks, symmetric_block_norm
from .errors import (BlockNotMinimal, ColumnNotMinimal, DimensionMismatch, InputError, InternalError,
                     NotNonnegative, NotPositiveSemidefinite, NotRankOne, NotRankTwo, NotSymmetric,
                     RankDeficientBlock, SingularBlock, WrongBlockSize, ZeroPivot)
from .linalg import (as_matrix, default_tol, identity, invert_small, is_exact, is_symmetric, kron,
                     least_norm_solution, max_norm, one_norm, pinv_full_col_rank, rank, sign_matrix,
                     unvec, vec, zeros)
from .serialize import matrix_to_json, scalar_to_json

#: float-mode tolerance for sign and case tests
FLOAT_TOL = 1e-9


@dataclass(frozen=True)
class DualCertificate:
    W: np.ndarray = field(repr=False)
    U: np.ndarray | None = field(repr=False)
    objective: object
    max_violation: object

    def to_dict(self):
        return {"W": matrix_to_json(self.W), "U": matrix_to_json(self.U),
                "objective": scalar_to_json(self.objective),
                "max_violation": scalar_to_json(self.max_violation)}


def inner(X, Y):
    """Frobenius inner product <X, Y>."""
    X, Y = np.asarray(X), np.asarray(Y)
    if is_exact(X) and is_exact(Y):
        return sum((a * b for a, b in zip(X.flat, Y.flat)), Fraction(0))
    return float(np.sum(np.asarray(X, dtype=float) * np.asarray(Y, dtype=float)))


def dual_residual(A, W, U=None):
    """max(0, ||A^T W A^T (+ A^T U)||_max - 1)."""
    A = as_matrix(A)
    m, n = A.shape
    if np.shape(W) != (m, n):
        raise DimensionMismatch(f"W must be {m}x{n}")
    G = A.T @ W @ A.T
    if U is not None:
        if np.shape(U) != (m, m):
            raise DimensionMismatch(f"U must be {m}x{m}")
        G = G + A.T @ U
    v = max_norm(G) - 1
    return v if v > 0 else (Fraction(0) if is_exact(G) else 0.0)


def make_certificate(A, W, U=None) -> DualCertificate:
    A = as_matrix(A)
    return DualCertificate(W=W, U=U, objective=inner(A, W), max_violation=dual_residual(A, W, U))


def verify_certificate(A, cert: DualCertificate, formulation="P1"):
    """Dual infeasibility of ``cert`` for the P1 or P1P3 dual; 0 means feasible.

    When the result is 0, ``cert.objective`` is a valid lower bound on the
    corresponding minimum 1-norm.
    """
    A = as_matrix(A)
    if formulation not in ("P1", "P1P3"):
        raise InputError(f"unknown formulation {formulation!r}")
    U = cert.U
    if formulation == "P1":
        if U is not None and max_norm(U) != 0:
            raise InputError("a P1 certificate carries no U")
        U = None
    elif U is not None and max_norm(U + U.T) > default_tol(A):
        raise InputError("U is not skew-symmetric")
    return dual_residual(A, cert.W, U)


# ---------------------------------------------------------------- symmetric


def cert_rank1_symmetric(A) -> DualCertificate:
    """W = e_i e_i^T / a_ii^2 for A = uu^T, with i = argmax |a_ii| (smallest index on ties).

    Since a_ii = u_i^2 the objective is 1 / max_i u_i^2 and no square roots
    are needed.
    """
    A = as_matrix(A)
    if not is_symmetric(A):
        raise NotSymmetric("matrix is not symmetric")
    if rank(A) != 1:
        raise NotRankOne("matrix does not have rank 1")
    n = A.shape[0]
    diag = [A[i, i] for i in range(n)]
    i_star = max(range(n), key=lambda i: (abs(diag[i]), -i))
    a = diag[i_star]
    if a < 0:
        raise NotPositiveSemidefinite("A = -uu^T; the closed-form certificate covers A = uu^T only")
    W = zeros((n, n), A)
    W[i_star, i_star] = 1 / (a * a)
    return make_certificate(A, W)


def _check_rank2_symmetric_nonneg(A):
    if not is_symmetric(A):
        raise NotSymmetric("matrix is not symmetric")
    if any(x < 0 for x in A.flat):
        raise NotNonnegative("matrix has negative entries")
    if rank(A) != 2:
        raise NotRankTwo("matrix does not have rank 2")


def _is_minimal(value, best, A):
    tol = 0 if is_exact(A) else FLOAT_TOL * max(1.0, abs(float(best)))
    return value <= best + tol


def cert_rank2_symmetric_nonneg(A, S=None) -> DualCertificate:
    """Block certificate for a rank-2 nonnegative symmetric A.

    W is zero outside S x S and W[S, S] = Ã^{-T} M Ã^{-T}, where Ã = A[S] and
    M = 2I - J if det(Ã) > 0, J - 2I otherwise. ``S`` defaults to the
    lexicographically first minimizer of ||A[S]^{-1}||_1.
    """
    A = as_matrix(A)
    _check_rank2_symmetric_nonneg(A)
    norms = list(enumerate_symmetric_blocks(A, 2))
    best = min(nrm for _, nrm in norms)
    if S is None:
        S = min(norms, key=lambda t: (t[1], t[0]))[0]
    S = tuple(sorted(S))
    if len(S) != 2:
        raise WrongBlockSize("S must have two indices")
    value = symmetric_block_norm(A, S)
    if value is None:
        raise SingularBlock(f"principal block {S} is singular")
    if not _is_minimal(value, best, A):
        raise BlockNotMinimal(f"block {S} has norm {value}, minimum is {best}")
    At = A[np.ix_(S, S)]
    Ait = invert_small(At).T
    det = At[0, 0] * At[1, 1] - At[0, 1] * At[1, 0]
    one = Fraction(1) if is_exact(A) else 1.0
    M = np.array([[one, -one], [-one, one]], dtype=A.dtype)
    if det < 0:
        M = -M
    n = A.shape[0]
    W = zeros((n, n), A)
    W[np.ix_(S, S)] = Ait @ M @ Ait
    return make_certificate(A, W)


def rank2_block_coordinates(A, S):
    """For each column j outside S, the coordinates x of A[S, j] in the basis of A[S].

    Returns a list of (j, x1, x2); the certificate argument needs |x1 - x2| <= 1.
    """
    A = as_matrix(A)
    S = tuple(sorted(S))
    Ainv = invert_small(A[np.ix_(S, S)])
    out = []
    for j in range(A.shape[1]):
        if j in S:
            continue
        x = Ainv @ A[list(S), j]
        out.append((j, x[0], x[1]))
    return out


# ---------------------------------------------------------------- ah-symmetric


def _column_pinv_norm(col):
    if is_exact(col):
        g = sum((x * x for x in col), Fraction(0))
    else:
        g = float(col @ col)
    return one_norm(col) / g


def cert_rank1_ah(A, j=None, i=None) -> DualCertificate:
    """Certificate (W, U) for the rank-1 ah-symmetric problem.

    Column ``j`` (default: lexicographically first minimizer of ||a^+||_1 over
    nonzero columns a) and row ``i`` with a_i != 0 (default: argmax |a_i|).
    W has the single entry s / a_i at (i, j), s = ||a^+||_1, and U is
    skew-symmetric with u_ki = -u_ik = (a_k s - z_k) / a_i, z = sign(a).
    """
    A = as_matrix(A)
    m, n = A.shape
    if rank(A) != 1:
        raise NotRankOne("matrix does not have rank 1")
    tol = default_tol(A)
    nonzero = [t for t in range(n) if max_norm(A[:, t]) > tol]
    norms = {t: _column_pinv_norm(A[:, t]) for t in nonzero}
    best = min(norms.values())
    if j is None:
        j = min(nonzero, key=lambda t: (norms[t], t))
    if j not in norms:
        raise ZeroPivot(f"column {j} is zero")
    if not _is_minimal(norms[j], best, A):
        raise ColumnNotMinimal(f"column {j} has ||a^+||_1 = {norms[j]}, minimum is {best}")
    a = A[:, j]
    if i is None:
        i = max(range(m), key=lambda t: (abs(a[t]), -t))
    if abs(a[i]) <= tol:
        raise ZeroPivot(f"a_{i} = 0")
    s = norms[j]
    z = sign_matrix(a.reshape(-1, 1), tol)[:, 0]
    W = zeros((m, n), A)
    W[i, j] = s / a[i]
    U = zeros((m, m), A)
    for k in range(m):
        if k != i:
            u = (a[k] * s - z[k]) / a[i]
            U[k, i] = u
            U[i, k] = -u
    return make_certificate(A, W, U)


def solve_wu_certificate(A, T) -> DualCertificate:
    """Some (W, U), U skew-symmetric, with Â^T W A^T + Â^T U = sign(Â^+) for Â = A[:, T].

    The equality system in the entries of W and the strictly upper entries of
    U is solved for its minimum-norm solution. Any solution gives
    <A, W> = ||Â^+||_1; dual feasibility on the other rows is only reported,
    through ``max_violation``.
    """
    A = as_matrix(A)
    m, n = A.shape
    T = tuple(sorted(T))
    if len(T) != rank(A):
        raise WrongBlockSize(f"|T| = {len(T)} but rank(A) = {rank(A)}")
    Ahat = A[:, list(T)]
    try:
        Hhat = pinv_full_col_rank(Ahat)
    except Exception as exc:
        raise RankDeficientBlock(f"columns {T} are linearly dependent") from exc
    Z = sign_matrix(Hhat, 0 if is_exact(A) else FLOAT_TOL * max(1.0, float(max_norm(Hhat))))
    KW = kron(A, Ahat.T)
    L = kron(identity(m, A), Ahat.T)
    pairs = [(p, q) for p in range(m) for q in range(p + 1, m)]
    if pairs:
        KU = np.stack([L[:, p + q * m] - L[:, q + p * m] for p, q in pairs], axis=1)
        C = np.concatenate([KW, KU], axis=1)
    else:
        C = KW
    x = least_norm_solution(C, vec(Z))
    W = unvec(x[:m * n], m, n)
    U = zeros((m, m), A)
    for (p, q), v in zip(pairs, x[m * n:]):
        U[p, q] = v
        U[q, p] = -v
    return make_certificate(A, W, U)


@dataclass(frozen=True)
class ColumnCondition:
    column: int
    alpha: object
    beta: object
    case_i: bool
    case_ii: bool
    case_iii: bool

    @property
    def passes(self):
        return self.case_i or self.case_ii or self.case_iii

    def to_dict(self):
        return {"column": self.column, "alpha": scalar_to_json(self.alpha),
                "beta": scalar_to_json(self.beta), "case_i": self.case_i,
                "case_ii": self.case_ii, "case_iii": self.case_iii}


@dataclass(frozen=True)
class ConditionReport:
    T: tuple
    H_hat: np.ndarray = field(repr=False)
    columns: tuple
    sign_pattern_opposite: bool
    sign_pattern_aligned: bool
    all_columns_pass: bool

    def to_dict(self):
        return {"T": list(self.T), "H_hat": matrix_to_json(self.H_hat),
                "columns": [c.to_dict() for c in self.columns],
                "sign_pattern_opposite": self.sign_pattern_opposite,
                "sign_pattern_aligned": self.sign_pattern_aligned,
                "all_columns_pass": self.all_columns_pass}


def check_rank2_ah_conditions(A, T) -> ConditionReport:
    """Write every column b of A as alpha a_{j1} + beta a_{j2} and test the three cases.

    (i)   |alpha| + |beta| <= 1
    (ii)  H_1k H_2k <= 0 for all k, and alpha beta >= 0
    (iii) H_1k H_2k >= 0 for all k, and alpha beta <= 0

    with H = A[:, T]^+. When T minimizes ||A[:, T]^+||_1 and every column
    passes, the column block solution on T is a minimum 1-norm ah-symmetric
    generalized inverse; when it is such a minimizer, every column passes.
    """
    A = as_matrix(A)
    if rank(A) != 2:
        raise NotRankTwo("matrix does not have rank 2")
    T = tuple(sorted(T))
    if len(T) != 2:
        raise WrongBlockSize("T must have two indices")
    Ahat = A[:, list(T)]
    try:
        Hhat = pinv_full_col_rank(Ahat)
    except Exception as exc:
        raise RankDeficientBlock(f"columns {T} are linearly dependent") from exc
    exact = is_exact(A)
    tol = 0 if exact else FLOAT_TOL
    prods = [Hhat[0, k] * Hhat[1, k] for k in range(A.shape[0])]
    hscale = 1 if exact else max(1.0, float(max_norm(Hhat))) ** 2
    opposite = all(p <= tol * hscale for p in prods)
    aligned = all(p >= -tol * hscale for p in prods)
    cols = []
    rec_tol = 0 if exact else FLOAT_TOL * max(1.0, float(max_norm(A)))
    for j in range(A.shape[1]):
        b = A[:, j]
        alpha, beta = Hhat @ b
        if max_norm((b - alpha * Ahat[:, 0] - beta * Ahat[:, 1]).reshape(-1, 1)) > rec_tol:
            raise InternalError(f"column {j} is not in the span of columns {T}")
        ab = alpha * beta
        cols.append(ColumnCondition(
            column=j, alpha=alpha, beta=beta,
            case_i=bool(abs(alpha) + abs(beta) <= 1 + tol),
            case_ii=bool(opposite and ab >= -tol),
            case_iii=bool(aligned and ab <= tol),
        ))
    return ConditionReport(T=T, H_hat=Hhat, columns=tuple(cols),
                           sign_pattern_opposite=opposite, sign_pattern_aligned=aligned,
                           all_columns_pass=all(c.passes for c in cols))
