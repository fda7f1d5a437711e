from fractions import Fraction as F

import numpy as np
import pytest

from ginv.linalg import as_matrix

SYM_COUNTEREXAMPLE = [[5, 4, 2], [4, 5, -2], [2, -2, 8]]
AH_COUNTEREXAMPLE = [[1, 3, 8], [2, 2, 8], [3, 1, 8]]
FOUR_COL = [[2, 3, 1, 5], [2, 3, 1, 5], [2, 5, 2, 7]]

AH_DISPLAYED_H = [[F(-1, 4), 0, F(1, 4)], [F(1, 4), 0, F(-1, 4)], [F(1, 24), F(1, 24), F(1, 24)]]
FOUR_COL_HHAT = [[F(5, 8), F(5, 8), F(-3, 4)], [F(-1, 4), F(-1, 4), F(1, 2)]]


def fr(rows):
    """Exact matrix from nested lists."""
    return as_matrix(rows, "exact")


def oracle_min_norm(A, ah=False, sym=False):
    """Independent LP oracle: scipy HiGHS on constraints written entry by entry.

    Variables are h[i, j] = H[i, j] (row-major), split into +/- parts.
    """
    from scipy.optimize import linprog

    A = np.asarray(A, dtype=float)
    m, n = A.shape
    idx = lambda i, j: i * m + j  # noqa: E731
    N = n * m
    rows, rhs = [], []
    for p in range(m):
        for q in range(n):
            r = np.zeros(N)
            for i in range(n):
                for j in range(m):
                    r[idx(i, j)] = A[p, i] * A[j, q]
            rows.append(r)
            rhs.append(A[p, q])
    if ah:
        for p in range(m):
            for q in range(p + 1, m):
                r = np.zeros(N)
                for i in range(n):
                    r[idx(i, q)] += A[p, i]
                    r[idx(i, p)] -= A[q, i]
                rows.append(r)
                rhs.append(0.0)
    if sym:
        for i in range(n):
            for j in range(i + 1, m):
                r = np.zeros(N)
                r[idx(i, j)] = 1
                r[idx(j, i)] = -1
                rows.append(r)
                rhs.append(0.0)
    E = np.array(rows)
    res = linprog(np.ones(2 * N), A_eq=np.hstack([E, -E]), b_eq=rhs, bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


@pytest.fixture
def sym_counterexample():
    return fr(SYM_COUNTEREXAMPLE)


@pytest.fixture
def ah_counterexample():
    return fr(AH_COUNTEREXAMPLE)


@pytest.fixture
def four_col():
    return fr(FOUR_COL)


#: one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
