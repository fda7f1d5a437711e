"""Dense two-phase primal simplex for  min c^T x  s.t.  M x = b,  x >= 0.

Exact mode runs on gmpy2 rationals and returns Fractions; float mode runs on
Python floats with fixed pivot thresholds. Bland's rule is always used, so
degenerate problems cannot cycle. Redundant equality rows are removed by
Gaussian elimination before phase 1; their dual multipliers are reported as 0.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .errors import DimensionMismatch, InternalError, NumericalBreakdown
from .linalg import as_matrix, is_exact

#: float mode: entries below this are cleaned to zero after each pivot
FLOAT_ZERO = 1e-12
#: float mode: smallest admissible pivot in the ratio test
FLOAT_PIVOT = 1e-9
#: float mode: reduced costs must be below -FLOAT_DJ to enter
FLOAT_DJ = 1e-10
MAX_ITERATIONS = 100_000


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    constraint_matrix: np.ndarray = field(repr=False)
    rhs: np.ndarray = field(repr=False)
    objective: np.ndarray = field(repr=False)

    def __post_init__(self):
        k, q = self.constraint_matrix.shape
        if len(self.rhs) != k or len(self.objective) != q:
            raise DimensionMismatch("constraint matrix, rhs and objective sizes disagree")

    @property
    def shape(self):
        return self.constraint_matrix.shape

    @classmethod
    def from_arrays(cls, M, b, c, mode=None):
        M = as_matrix(M, mode)
        like = M
        b = as_matrix(np.asarray(b, dtype=object).reshape(-1, 1), "exact" if is_exact(like) else "float")[:, 0]
        c = as_matrix(np.asarray(c, dtype=object).reshape(-1, 1), "exact" if is_exact(like) else "float")[:, 0]
        return cls(M, b, c)


@dataclass
class LPSolution:
    status: LPStatus
    primal: np.ndarray | None = field(default=None, repr=False)
    dual: np.ndarray | None = field(default=None, repr=False)
    objective_value: object = None
    iterations: int = 0
    basis: tuple = ()
    rows_kept: tuple = ()


def _independent_rows(rows, rhs, exact):
    """Row-echelon pass over [M | b]; returns (kept row indices, consistent flag)."""
    work = [list(r) + [v] for r, v in zip(rows, rhs)]
    n = len(work[0]) - 1 if work else 0
    scale = max((abs(x) for r in work for x in r), default=1) or 1
    tol = 0 if exact else 1e-9 * scale
    pivots = []   # (reduced row, pivot column)
    kept = []
    for i, row in enumerate(work):
        row = list(row)
        for prow, pc in pivots:
            f = row[pc]
            if f:
                f = f / prow[pc]
                for t in range(n + 1):
                    if prow[t]:
                        row[t] -= f * prow[t]
        if not exact:
            row = [0.0 if abs(x) <= tol else x for x in row]
        pc = next((t for t in range(n) if row[t]), None)
        if pc is None:
            if row[n]:
                return kept, False
            continue
        if not exact:
            pc = max(range(n), key=lambda t: abs(row[t]))
        pivots.append((row, pc))
        kept.append(i)
    return kept, True


class _Tableau:
    def __init__(self, rows, rhs, exact):
        self.exact = exact
        self.zero = mpq(0) if exact else 0.0
        self.rows = rows
        self.rhs = rhs
        self.k = len(rows)
        self.N = len(rows[0]) if rows else 0
        self.basis = []
        self.d = []
        self.z = self.zero
        self.iterations = 0

    def price(self, cost):
        """Reduced costs d = cost - c_B^T B^{-1} M and objective value for the current basis."""
        d = list(cost)
        z = self.zero
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.rows[i]
                for t in range(self.N):
                    if row[t]:
                        d[t] -= cb * row[t]
                z += cb * self.rhs[i]
        self.d = d
        self.z = z

    def pivot(self, r, j):
        exact = self.exact
        prow = self.rows[r]
        p = prow[j]
        if not exact and abs(p) < FLOAT_ZERO:
            raise NumericalBreakdown(f"pivot {p!r} below {FLOAT_ZERO}")
        inv = 1 / p
        prow = [x * inv if x else x for x in prow]
        prow[j] = mpq(1) if exact else 1.0
        prhs = self.rhs[r] * inv
        self.rows[r] = prow
        self.rhs[r] = prhs
        nz = [t for t in range(self.N) if prow[t]]
        for i in range(self.k):
            if i == r:
                continue
            row = self.rows[i]
            f = row[j]
            if not f:
                continue
            for t in nz:
                row[t] -= f * prow[t]
            row[j] = self.zero
            self.rhs[i] -= f * prhs
            if not exact:
                for t in nz:
                    if abs(row[t]) < FLOAT_ZERO:
                        row[t] = 0.0
                if abs(self.rhs[i]) < FLOAT_ZERO:
                    self.rhs[i] = 0.0
        f = self.d[j]
        if f:
            for t in nz:
                self.d[t] -= f * prow[t]
            self.d[j] = self.zero
            self.z += f * prhs
        self.basis[r] = j
        self.iterations += 1

    def iterate(self, allowed):
        """Run Bland's-rule pivots over entering candidates ``range(allowed)``.

        Returns True at optimality, False when unbounded.
        """
        exact = self.exact
        dj_tol = 0 if exact else -FLOAT_DJ
        while True:
            if self.iterations > MAX_ITERATIONS:
                raise InternalError("simplex iteration limit exceeded")
            j = next((t for t in range(allowed) if self.d[t] < dj_tol), None)
            if j is None:
                return True
            best = None
            tiny = False
            for i in range(self.k):
                a = self.rows[i][j]
                if exact:
                    if a <= 0:
                        continue
                elif a <= FLOAT_PIVOT:
                    tiny = tiny or a > FLOAT_ZERO
                    continue
                ratio = self.rhs[i] / a
                key = (ratio, self.basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
            if best is None:
                if tiny:
                    raise NumericalBreakdown("only near-zero pivots available")
                return False
            self.pivot(best[1], j)


def _convert(x, exact):
    if exact:
        return mpq(x.numerator, x.denominator) if isinstance(x, Fraction) else mpq(x)
    return float(x)


def _back(x, exact):
    if exact:
        return Fraction(int(x.numerator), int(x.denominator))
    return float(x)


def solve(lp: LinearProgram, eliminate_redundant: bool = True) -> LPSolution:
    """Solve ``lp`` by two-phase simplex with Bland's rule.

    Infeasible and unbounded problems are reported through ``status``.
    At optimality ``dual`` holds one multiplier per original equality row,
    with ``objective_value == b^T dual`` (exactly, in exact mode).
    """
    M = lp.constraint_matrix
    exact = is_exact(M)
    k, q = M.shape
    rows = [[_convert(x, exact) for x in M[i]] for i in range(k)]
    rhs = [_convert(x, exact) for x in lp.rhs]
    cost = [_convert(x, exact) for x in lp.objective]
    signs = []
    for i in range(k):
        if rhs[i] < 0:
            rows[i] = [-x for x in rows[i]]
            rhs[i] = -rhs[i]
            signs.append(-1)
        else:
            signs.append(1)

    if eliminate_redundant:
        kept, consistent = _independent_rows(rows, rhs, exact)
        if not consistent:
            return LPSolution(LPStatus.INFEASIBLE)
    else:
        kept = list(range(k))
    kk = len(kept)
    one = mpq(1) if exact else 1.0
    zero = mpq(0) if exact else 0.0

    trows = []
    for pos, i in enumerate(kept):
        art = [zero] * kk
        art[pos] = one
        trows.append(rows[i] + art)
    tab = _Tableau(trows, [rhs[i] for i in kept], exact)
    tab.basis = list(range(q, q + kk))

    # phase 1: minimize the sum of artificials
    tab.price([zero] * q + [one] * kk)
    if not tab.iterate(q):
        raise InternalError("phase 1 reported unbounded")
    feas_tol = 0 if exact else 1e-9 * max(1.0, max((abs(v) for v in rhs), default=1.0))
    if tab.z > feas_tol:
        return LPSolution(LPStatus.INFEASIBLE, iterations=tab.iterations)

    # drive zero-level artificials out of the basis
    for i in range(kk):
        if tab.basis[i] >= q:
            row = tab.rows[i]
            thresh = 0 if exact else FLOAT_PIVOT
            j = next((t for t in range(q) if abs(row[t]) > thresh), None)
            if j is not None:
                tab.pivot(i, j)

    # phase 2
    tab.price(cost + [zero] * kk)
    if not tab.iterate(q):
        return LPSolution(LPStatus.UNBOUNDED, iterations=tab.iterations)

    x = [zero] * q
    for i, bj in enumerate(tab.basis):
        if bj < q:
            x[bj] = tab.rhs[i]
    y = [zero] * k
    for pos, i in enumerate(kept):
        y[i] = -tab.d[q + pos] * signs[i]
    dtype = object if exact else np.float64
    primal = np.array([_back(v, exact) for v in x], dtype=dtype)
    dual = np.array([_back(v, exact) for v in y], dtype=dtype)
    return LPSolution(LPStatus.OPTIMAL, primal=primal, dual=dual,
                      objective_value=_back(tab.z, exact), iterations=tab.iterations,
                      basis=tuple(tab.basis), rows_kept=tuple(kept))


@dataclass(frozen=True)
class LPDiagnostics:
    primal_residual: object
    min_primal: object
    duality_gap: object
    dual_infeasibility: object
    complementary_slackness: object


def diagnose(lp: LinearProgram, sol: LPSolution) -> LPDiagnostics:
    """Optimality residuals of an OPTIMAL solution.

    ``complementary_slackness`` is max_j min(x_j, reduced cost_j) over the
    coordinates, i.e. how far any x_j > 0 has a nonzero reduced cost.
    """
    M, b, c = lp.constraint_matrix, lp.rhs, lp.objective
    x, y = sol.primal, sol.dual
    red = c - M.T @ y
    gap = abs(c @ x - b @ y)
    abs_max = (lambda v: max((abs(t) for t in v), default=0))
    return LPDiagnostics(
        primal_residual=abs_max(M @ x - b),
        min_primal=min(x, default=0),
        duality_gap=gap,
        dual_infeasibility=max([0] + [-t for t in red]),
        complementary_slackness=max((min(abs(xj), abs(rj)) for xj, rj in zip(x, red)), default=0),
    )
