"""Dense real linear algebra on small matrices, in exact-rational or binary64 mode.

A matrix is a 2-D numpy array. Exact mode uses ``dtype=object`` holding
:class:`fractions.Fraction` entries; float mode uses ``float64``. Every routine
here dispatches on the dtype of its input, so exactness propagates.
"""
from __future__ import annotations

import math
import numbers
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, InputError, InternalError, RankDeficient, SingularMatrix

EXACT = "exact"
FLOAT = "float"

#: Largest min(rows, cols) for which exact mode is chosen automatically.
EXACT_MAX_DIM = 12
#: Relative rank tolerance in float mode (multiplied by max_norm(A)).
FLOAT_RTOL = 1e-9
MODE_ENV_VAR = "GINV_NUMERIC_MODE"


@dataclass(frozen=True)
class RankFactorization:
    rank: int
    row_basis: tuple
    col_basis: tuple
    tolerance_used: float


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, numbers.Rational):
        return Fraction(int(x.numerator), int(x.denominator))
    xf = float(x)
    if not math.isfinite(xf):
        raise InputError(f"non-finite entry {x!r}")
    return Fraction(xf)


def _is_rational_entry(x) -> bool:
    if isinstance(x, (numbers.Rational, str)):
        return True
    try:
        xf = float(x)
    except (TypeError, ValueError):
        return False
    return math.isfinite(xf) and xf.is_integer()


def choose_mode(A, mode=None) -> str:
    """Pick the numeric mode for raw input ``A``.

    Explicit ``mode`` wins, then the ``GINV_NUMERIC_MODE`` environment variable,
    then the automatic rule: exact for rational entries with min(m, n) <= 12.
    """
    if mode is None:
        mode = os.environ.get(MODE_ENV_VAR) or None
    if mode is not None:
        if mode not in (EXACT, FLOAT):
            raise InputError(f"unknown numeric mode {mode!r}")
        return mode
    arr = np.asarray(A, dtype=object)
    if arr.ndim == 2 and min(arr.shape) > EXACT_MAX_DIM:
        return FLOAT
    if all(_is_rational_entry(x) for x in arr.flat):
        return EXACT
    return FLOAT


def as_matrix(A, mode=None) -> np.ndarray:
    """Convert ``A`` to a 2-D matrix in the requested (or automatic) mode."""
    if isinstance(A, np.ndarray) and A.ndim == 2 and A.size and mode is None:
        if A.dtype == object and all(isinstance(x, Fraction) for x in A.flat):
            return A
        if A.dtype == np.float64:
            if not np.all(np.isfinite(A)):
                raise InputError("matrix has non-finite entries")
            return A
    mode = choose_mode(A, mode)
    arr = np.asarray(A, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise InputError(f"expected a 2-D matrix, got ndim={arr.ndim}")
    if arr.size == 0:
        raise InputError("empty matrix")
    if mode == EXACT:
        out = np.empty(arr.shape, dtype=object)
        for idx, x in np.ndenumerate(arr):
            out[idx] = _to_fraction(x)
        return out
    out = np.array([[float(_to_fraction(x)) if isinstance(x, str) else float(x) for x in row]
                    for row in arr], dtype=np.float64)
    if not np.all(np.isfinite(out)):
        raise InputError("matrix has non-finite entries")
    return out


def is_exact(A) -> bool:
    return getattr(A, "dtype", None) == object


def to_float(A) -> np.ndarray:
    return np.asarray(A, dtype=np.float64) if not is_exact(A) else \
        np.array([[float(x) for x in row] for row in A], dtype=np.float64)


def zeros(shape, like) -> np.ndarray:
    if is_exact(like):
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def identity(n, like) -> np.ndarray:
    out = zeros((n, n), like)
    for i in range(n):
        out[i, i] = Fraction(1) if is_exact(like) else 1.0
    return out


def one_norm(A) -> Fraction | float:
    """Entrywise 1-norm: sum of absolute values of all entries."""
    A = np.asarray(A)
    if A.size == 0:
        return Fraction(0)
    if is_exact(A):
        return sum((abs(x) for x in A.flat), Fraction(0))
    return float(np.abs(A).sum())


def max_norm(A) -> Fraction | float:
    """Largest absolute entry."""
    A = np.asarray(A)
    if A.size == 0:
        return Fraction(0)
    if is_exact(A):
        return max(abs(x) for x in A.flat)
    return float(np.abs(A).max())


def default_tol(A) -> Fraction | float:
    """Zero in exact mode, ``FLOAT_RTOL * max_norm(A)`` in float mode."""
    if is_exact(A):
        return Fraction(0)
    return FLOAT_RTOL * max_norm(A)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_matrix(A, tol=0) -> np.ndarray:
    """Entrywise sign with sign(0) = 0; entries within ``tol`` of zero count as zero."""
    out = np.empty(A.shape, dtype=object if is_exact(A) else np.float64)
    for idx, x in np.ndenumerate(A):
        s = 0 if abs(x) <= tol else sign(x)
        out[idx] = Fraction(s) if is_exact(A) else float(s)
    return out


def vec(A) -> np.ndarray:
    """Column-major vectorization."""
    return np.asarray(A).reshape(-1, order="F")


def unvec(v, rows, cols) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape((rows, cols), order="F")


def kron(A, B) -> np.ndarray:
    return np.kron(A, B)


def is_symmetric(A, tol=None) -> bool:
    A = np.asarray(A)
    if A.shape[0] != A.shape[1]:
        return False
    if tol is None:
        tol = default_tol(A)
    return max_norm(A - A.T) <= tol


def rank_factorize(A, tol=None) -> RankFactorization:
    """Rank and basis index sets via complete-pivoting Gaussian elimination.

    In float mode a pivot counts when its magnitude exceeds ``tol`` (default
    ``FLOAT_RTOL * max_norm(A)``); in exact mode when it is nonzero.
    The returned bases are sorted and A[row_basis, col_basis] is nonsingular.
    """
    A = as_matrix(A)
    exact = is_exact(A)
    if exact:
        tol = Fraction(0)
    elif tol is None:
        tol = default_tol(A)
    work = A.copy() if exact else A.astype(np.float64, copy=True)
    m, n = work.shape
    rows = list(range(m))
    cols = list(range(n))
    r = 0
    for k in range(min(m, n)):
        sub = np.abs(work[k:, k:])
        if exact:
            flat = max(range(sub.size), key=lambda t: (sub.flat[t], -t))
        else:
            flat = int(np.argmax(sub))
        pi, pj = divmod(flat, n - k)
        piv = work[k + pi, k + pj]
        if abs(piv) <= tol or (exact and piv == 0):
            break
        if pi:
            work[[k, k + pi]] = work[[k + pi, k]]
            rows[k], rows[k + pi] = rows[k + pi], rows[k]
        if pj:
            work[:, [k, k + pj]] = work[:, [k + pj, k]]
            cols[k], cols[k + pj] = cols[k + pj], cols[k]
        factors = work[k + 1:, k] / piv
        work[k + 1:, k:] -= np.outer(factors, work[k, k:])
        r += 1
    return RankFactorization(rank=r, row_basis=tuple(sorted(rows[:r])),
                             col_basis=tuple(sorted(cols[:r])),
                             tolerance_used=tol if exact else float(tol))


def rank(A, tol=None) -> int:
    return rank_factorize(A, tol).rank


def invert_small(A) -> np.ndarray:
    """Inverse of a small nonsingular square matrix by Gauss-Jordan elimination.

    Raises SingularMatrix when no admissible pivot is found (exactly zero in
    exact mode, below ``1e-12 * max_norm(A)`` in float mode).
    """
    A = as_matrix(A)
    n, n2 = A.shape
    if n != n2:
        raise DimensionMismatch(f"cannot invert a {n}x{n2} matrix")
    exact = is_exact(A)
    thresh = Fraction(0) if exact else 1e-12 * max_norm(A)
    aug = np.concatenate([A.copy(), identity(n, A)], axis=1)
    if not exact:
        aug = aug.astype(np.float64)
    for k in range(n):
        col = np.abs(aug[k:, k])
        p = k + (max(range(len(col)), key=lambda t: (col[t], -t)) if exact else int(np.argmax(col)))
        if abs(aug[p, k]) <= thresh:
            raise SingularMatrix("matrix is singular")
        if p != k:
            aug[[k, p]] = aug[[p, k]]
        aug[k] = aug[k] / aug[k, k]
        for i in range(n):
            if i != k and aug[i, k] != 0:
                aug[i] = aug[i] - aug[i, k] * aug[k]
    return aug[:, n:]


def pinv_full_col_rank(Ahat) -> np.ndarray:
    """Moore-Penrose pseudoinverse (Ahat^T Ahat)^{-1} Ahat^T of a full-column-rank matrix."""
    Ahat = as_matrix(Ahat)
    if rank(Ahat) != Ahat.shape[1]:
        raise RankDeficient("columns are linearly dependent")
    return invert_small(Ahat.T @ Ahat) @ Ahat.T


def least_norm_solution(C, z) -> np.ndarray:
    """Minimum-2-norm solution x of the consistent system C x = z.

    Exact mode reduces C to an independent row subset R and returns
    C_R^T (C_R C_R^T)^{-1} z_R; float mode uses ``numpy.linalg.lstsq``.
    Raises InternalError if the system is inconsistent.
    """
    C = as_matrix(C)
    z = np.asarray(z)
    if is_exact(C):
        fac = rank_factorize(C)
        R = list(fac.row_basis)
        if not R:
            x = zeros(C.shape[1], C)
        else:
            CR = C[R]
            x = CR.T @ (invert_small(CR @ CR.T) @ z[R])
        if any(v != 0 for v in (C @ x - z)):
            raise InternalError("linear system is inconsistent")
        return x
    x, *_ = np.linalg.lstsq(C, np.asarray(z, dtype=np.float64), rcond=None)
    scale = max(1.0, float(np.abs(z).max(initial=0.0)))
    if float(np.abs(C @ x - z).max(initial=0.0)) > 1e-8 * scale:
        raise InternalError("linear system is inconsistent")
    return x
