"""Moore-Penrose property residuals and reflexivity checks for a candidate H."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import as_matrix, default_tol, is_exact, max_norm, rank
from .serialize import scalar_to_json


@dataclass(frozen=True)
class MPReport:
    p1_residual: object
    p2_residual: object
    p3_residual: object
    p4_residual: object
    h_symmetric_residual: object
    rank_A: int
    rank_H: int
    reflexive: bool

    def to_dict(self):
        return {k: scalar_to_json(v) for k, v in self.__dict__.items()}


def _coerce_pair(A, H):
    A = as_matrix(A)
    H = as_matrix(H)
    if is_exact(A) != is_exact(H):
        # mixed modes are compared in float
        A = as_matrix(A, "float")
        H = as_matrix(H, "float")
    m, n = A.shape
    if H.shape != (n, m):
        raise DimensionMismatch(f"H must be {n}x{m} for a {m}x{n} A, got {H.shape[0]}x{H.shape[1]}")
    return A, H


def check_mp(A, H, tol=None) -> MPReport:
    """Residuals (max-norm) of the four Moore-Penrose equations for H against A.

    ``reflexive`` is decided by rank(H) == rank(A) for a generalized inverse,
    not by the HAH = H residual. ``tol`` defaults to zero in exact mode.
    """
    A, H = _coerce_pair(A, H)
    if tol is None:
        tol = max(default_tol(A), default_tol(H))
    AH = A @ H
    HA = H @ A
    p1 = max_norm(AH @ A - A)
    h_sq = H.shape[0] == H.shape[1]
    rank_A = rank(A)
    rank_H = rank(H)
    return MPReport(
        p1_residual=p1,
        p2_residual=max_norm(HA @ H - H),
        p3_residual=max_norm(AH.T - AH),
        p4_residual=max_norm(HA.T - HA),
        h_symmetric_residual=max_norm(H - H.T) if h_sq else None,
        rank_A=rank_A,
        rank_H=rank_H,
        reflexive=bool(p1 <= tol and rank_H == rank_A),
    )


def is_generalized_inverse(A, H, tol=None) -> bool:
    A, H = _coerce_pair(A, H)
    if tol is None:
        tol = max(default_tol(A), default_tol(H))
    return bool(max_norm(A @ H @ A - A) <= tol)


def is_ah_symmetric(A, H, tol=None) -> bool:
    """True when AH is symmetric (within ``tol``)."""
    A, H = _coerce_pair(A, H)
    if tol is None:
        tol = max(default_tol(A), default_tol(H))
    AH = A @ H
    return bool(max_norm(AH.T - AH) <= tol)


def is_reflexive(A, H, tol=None) -> bool:
    return check_mp(A, H, tol).reflexive
