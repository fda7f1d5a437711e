"""Exact 1-norm minimization of generalized inverses as linear programs.

Three formulations over H (n x m) for a given A (m x n):

* ``P1``     min ||H||_1  s.t.  AHA = A
* ``P1Sym``  the same with H = H^T (A symmetric)
* ``P1P3``   min ||H||_1  s.t.  AHA = A,  AH = (AH)^T

H is split as H+ - H- with H+, H- >= 0, and AHA = A is imposed through
vec(AHA) = (A^T kron A) vec(H) with column-major vec. The LP duals are
reassembled into W (m x n) and, for P1P3, a skew-symmetric U (m x m) such that
||A^T W A^T + A^T U||_max <= 1 and <A, W> equals the optimal 1-norm.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .certify import dual_residual
from .errors import DegenerateInput, InternalError, NotSymmetric
from .linalg import as_matrix, identity, is_exact, is_symmetric, kron, max_norm, one_norm, unvec, vec, zeros
from .lp import LinearProgram, LPSolution, LPStatus, solve
from .serialize import matrix_to_json, scalar_to_json

DUAL_TOL = 1e-8


class Formulation(str, enum.Enum):
    P1 = "P1"
    P1_SYM = "P1Sym"
    P1_P3 = "P1P3"


@dataclass
class MinNormResult:
    H: np.ndarray = field(repr=False)
    one_norm: object
    dual_W: np.ndarray = field(repr=False)
    dual_U: np.ndarray | None = field(repr=False)
    formulation: Formulation
    lp: LinearProgram = field(repr=False, default=None)
    solution: LPSolution = field(repr=False, default=None)

    def to_dict(self):
        return {"formulation": self.formulation.value,
                "one_norm": scalar_to_json(self.one_norm),
                "H": matrix_to_json(self.H),
                "dual_W": matrix_to_json(self.dual_W),
                "dual_U": matrix_to_json(self.dual_U)}


def _prepare(A):
    A = as_matrix(A)
    if max_norm(A) == 0:
        raise DegenerateInput("A = 0 has no meaningful 1-norm minimizing generalized inverse")
    return A


def _ones(q, like):
    return np.array([Fraction(1)] * q, dtype=object) if is_exact(like) else np.ones(q)


def _solve_checked(A, M, b, c, formulation, recover):
    """Solve the LP, rebuild (H, W, U) and verify the dual; retry without row elimination."""
    lp = LinearProgram(M, b, c)
    for eliminate in (True, False):
        sol = solve(lp, eliminate_redundant=eliminate)
        if sol.status is not LPStatus.OPTIMAL:
            raise InternalError(f"{formulation.value} LP reported {sol.status.value}")
        H, W, U = recover(sol)
        viol = dual_residual(A, W, U)
        tol = 0 if is_exact(A) else DUAL_TOL
        if viol <= tol:
            break
        if not is_exact(A):
            break
    else:
        raise InternalError("recovered dual multipliers are not dual feasible")
    return MinNormResult(H=H, one_norm=sol.objective_value, dual_W=W, dual_U=U,
                         formulation=formulation, lp=lp, solution=sol)


def p1_constraints(A):
    """Rows of vec(AHA) = vec(A): the matrix A^T kron A and the rhs vec(A)."""
    return kron(A.T, A), vec(A)


def ah_constraints(A):
    """Rows (AH)_ij - (AH)_ji = 0 for i < j, in terms of vec(H)."""
    m = A.shape[0]
    L = kron(identity(m, A), A)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    if not pairs:
        return np.zeros((0, L.shape[1]), dtype=L.dtype), pairs
    rows = np.array([L[i + j * m] - L[j + i * m] for i, j in pairs], dtype=L.dtype)
    return rows, pairs


def min_norm_p1(A) -> MinNormResult:
    """min ||H||_1 subject to AHA = A."""
    A = _prepare(A)
    m, n = A.shape
    K, b = p1_constraints(A)
    M = np.concatenate([K, -K], axis=1)
    c = _ones(2 * m * n, A)
    mn = m * n

    def recover(sol):
        h = sol.primal[:mn] - sol.primal[mn:]
        return unvec(h, n, m), unvec(sol.dual, m, n), None

    return _solve_checked(A, M, b, c, Formulation.P1, recover)


def min_norm_p1_symmetric(A) -> MinNormResult:
    """min ||H||_1 subject to AHA = A and H = H^T.

    h_ij and h_ji share one pair of nonnegative variables, each off-diagonal
    pair costing 2 so the objective is still the full entrywise 1-norm. The
    returned W is the symmetric part of the raw multipliers, which is feasible
    for the unsymmetrized dual and has the same objective since A = A^T.
    """
    A = _prepare(A)
    if not is_symmetric(A):
        raise NotSymmetric("symmetric minimization needs a symmetric matrix")
    n = A.shape[0]
    K, b = p1_constraints(A)
    pairs = [(i, j) for j in range(n) for i in range(j + 1)]
    cols = []
    cost = []
    for i, j in pairs:
        col = K[:, i + j * n]
        if i != j:
            col = col + K[:, j + i * n]
        cols.append(col)
        cost.append(1 if i == j else 2)
    G = np.stack(cols, axis=1)
    M = np.concatenate([G, -G], axis=1)
    cvec = np.array(cost + cost, dtype=object)
    cvec = np.array([Fraction(x) for x in cvec], dtype=object) if is_exact(A) else cvec.astype(np.float64)
    p = len(pairs)

    def recover(sol):
        g = sol.primal[:p] - sol.primal[p:]
        H = zeros((n, n), A)
        for (i, j), v in zip(pairs, g):
            H[i, j] = v
            H[j, i] = v
        W = unvec(sol.dual, n, n)
        half = Fraction(1, 2) if is_exact(A) else 0.5
        return H, (W + W.T) * half, None

    return _solve_checked(A, M, b, cvec, Formulation.P1_SYM, recover)


def min_norm_p1_p3(A) -> MinNormResult:
    """min ||H||_1 subject to AHA = A and AH symmetric.

    The multipliers v_ij of the symmetry rows (i < j) form U = V - V^T.
    """
    A = _prepare(A)
    m, n = A.shape
    K, b = p1_constraints(A)
    S, pairs = ah_constraints(A)
    rows = np.concatenate([K, S], axis=0)
    M = np.concatenate([rows, -rows], axis=1)
    rhs = np.concatenate([b, zeros(len(pairs), A)])
    c = _ones(2 * m * n, A)
    mn = m * n

    def recover(sol):
        h = sol.primal[:mn] - sol.primal[mn:]
        W = unvec(sol.dual[:mn], m, n)
        U = zeros((m, m), A)
        for (i, j), v in zip(pairs, sol.dual[mn:]):
            U[i, j] = v
            U[j, i] = -v
        return unvec(h, n, m), W, U

    return _solve_checked(A, M, rhs, c, Formulation.P1_P3, recover)


def min_norm(A, formulation) -> MinNormResult:
    formulation = Formulation(formulation)
    return {Formulation.P1: min_norm_p1,
            Formulation.P1_SYM: min_norm_p1_symmetric,
            Formulation.P1_P3: min_norm_p1_p3}[formulation](A)
