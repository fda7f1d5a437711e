"""Exhaustive search over block solutions and certification of the best one."""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from itertools import combinations, islice

import numpy as np

from .blocks import (GinvSolution, column_block, column_block_norm, symmetric_block,
                     symmetric_block_norm)
from .certify import (ConditionReport, DualCertificate, cert_rank1_ah, cert_rank1_symmetric,
                      cert_rank2_symmetric_nonneg, check_rank2_ah_conditions, make_certificate,
                      solve_wu_certificate, verify_certificate)
from .errors import DegenerateInput, GinvError, InternalError, NotSymmetric
from .linalg import as_matrix, is_exact, is_symmetric, max_norm, rank
from .normmin import min_norm_p1_p3, min_norm_p1_symmetric
from .serialize import scalar_to_json, to_jsonable

#: float-mode relative tolerance when comparing a block norm with an LP optimum
COMPARE_RTOL = 1e-8


@dataclass
class SearchResult:
    best: GinvSolution
    best_index_set: tuple
    candidates_examined: int
    per_candidate_norms: list | None = field(default=None, repr=False)

    def to_dict(self, one_based=False):
        shift = 1 if one_based else 0
        d = {"best": self.best.to_dict(),
             "best_index_set": [i + shift for i in self.best_index_set],
             "candidates_examined": self.candidates_examined}
        if self.per_candidate_norms is not None:
            d["per_candidate_norms"] = [
                {"indices": [i + shift for i in idx], "one_norm": scalar_to_json(v)}
                for idx, v in self.per_candidate_norms]
        return d


def _norms_chunk(norm_fn, A, subsets):
    return [(s, norm_fn(A, s)) for s in subsets]


def _chunks(it, size):
    it = iter(it)
    while chunk := list(islice(it, size)):
        yield chunk


def _scan(A, norm_fn, subsets, workers):
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = pool.map(partial(_norms_chunk, norm_fn, A), _chunks(subsets, 64))
            pairs = [p for part in parts for p in part]
    else:
        pairs = _norms_chunk(norm_fn, A, subsets)
    # reduction by (norm, index set) is independent of evaluation order
    return sorted((s, v) for s, v in pairs if v is not None)


def best_symmetric_block(A, keep_candidates=True, workers=None) -> SearchResult:
    """Minimum-1-norm symmetric block solution over all r x r principal blocks.

    Ties go to the lexicographically smallest index set. ``workers > 1`` fans
    the enumeration out over processes.
    """
    A = as_matrix(A)
    if not is_symmetric(A):
        raise NotSymmetric("symmetric block search needs a symmetric matrix")
    r = rank(A)
    if r == 0:
        raise DegenerateInput("A = 0 has no block solutions")
    n = A.shape[0]
    if r == 1:
        # 1x1 blocks: ||A[{i}]^{-1}||_1 = 1/|a_ii|
        found = [((i,), 1 / abs(A[i, i])) for i in range(n) if A[i, i] != 0]
    else:
        found = _scan(A, symmetric_block_norm, combinations(range(n), r), workers)
    if not found:
        raise InternalError("no nonsingular principal block in a symmetric matrix")
    S, _ = min(found, key=lambda t: (t[1], t[0]))
    return SearchResult(best=symmetric_block(A, S, r=r), best_index_set=S,
                        candidates_examined=len(found),
                        per_candidate_norms=found if keep_candidates else None)


def best_column_block(A, keep_candidates=True, workers=None) -> SearchResult:
    """Minimum-1-norm column block solution over all full-rank m x r column blocks."""
    A = as_matrix(A)
    r = rank(A)
    if r == 0:
        raise DegenerateInput("A = 0 has no block solutions")
    found = _scan(A, column_block_norm, combinations(range(A.shape[1]), r), workers)
    if not found:
        raise InternalError("no full-rank column block")
    T, _ = min(found, key=lambda t: (t[1], t[0]))
    return SearchResult(best=column_block(A, T, r=r), best_index_set=T,
                        candidates_examined=len(found),
                        per_candidate_norms=found if keep_candidates else None)


class Goal(str, enum.Enum):
    SYMMETRIC = "sym"
    AH_SYMMETRIC = "ah"


class Outcome(str, enum.Enum):
    OPTIMAL = "optimal"
    NOT_CERTIFIED = "not_certified"
    SUBOPTIMAL = "suboptimal_witness"


@dataclass
class Certification:
    outcome: Outcome
    goal: Goal
    rank: int | None = None
    method: str | None = None
    block: SearchResult | None = field(default=None, repr=False)
    certificate: DualCertificate | None = field(default=None, repr=False)
    lp_value: object = None
    conditions: ConditionReport | None = field(default=None, repr=False)
    reason: str | None = None

    @property
    def block_norm(self):
        return self.block.best.one_norm if self.block else None

    def to_dict(self, one_based=False):
        return {
            "outcome": self.outcome.value,
            "goal": self.goal.value,
            "rank": self.rank,
            "method": self.method,
            "block": self.block.to_dict(one_based) if self.block else None,
            "block_norm": scalar_to_json(self.block_norm),
            "lp_value": scalar_to_json(self.lp_value),
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "conditions": _conditions_dict(self.conditions, one_based),
            "reason": self.reason,
        }


def _conditions_dict(rep, one_based):
    if rep is None:
        return None
    d = to_jsonable(rep)
    if one_based:
        d["T"] = [i + 1 for i in d["T"]]
        for c in d["columns"]:
            c["column"] += 1
    return d


def _close(a, b, A):
    if is_exact(A):
        return a == b
    return abs(float(a) - float(b)) <= COMPARE_RTOL * max(1.0, abs(float(b)))


def _feasible(A, cert, formulation):
    v = verify_certificate(A, cert, formulation)
    return v == 0 if is_exact(A) else v <= COMPARE_RTOL


def certify_block_optimality(A, goal) -> Certification:
    """Decide whether the best block solution minimizes the 1-norm for ``goal``.

    Closed-form certificates are tried first (symmetric rank 1, symmetric
    nonnegative rank 2, ah rank 1, ah rank 2 under the column conditions);
    every other case, and every failed verification, is settled against the
    LP optimum, whose dual then serves as the certificate when it matches.
    """
    goal = Goal(goal)
    A = as_matrix(A)
    if max_norm(A) == 0:
        return Certification(Outcome.NOT_CERTIFIED, goal, rank=0, reason="A = 0")
    r = rank(A)
    cert = None
    method = None
    conditions = None
    if goal is Goal.SYMMETRIC:
        if not is_symmetric(A):
            return Certification(Outcome.NOT_CERTIFIED, goal, rank=r, reason="A is not symmetric")
        block = best_symmetric_block(A)
        formulation = "P1"
        try:
            if r == 1:
                cert, method = cert_rank1_symmetric(A), "rank1_symmetric"
            elif r == 2 and all(x >= 0 for x in A.flat):
                cert = cert_rank2_symmetric_nonneg(A, block.best_index_set)
                method = "rank2_symmetric_nonnegative"
        except GinvError:
            cert = None
    else:
        block = best_column_block(A)
        formulation = "P1P3"
        try:
            if r == 1:
                cert, method = cert_rank1_ah(A, j=block.best_index_set[0]), "rank1_ah"
            elif r == 2:
                conditions = check_rank2_ah_conditions(A, block.best_index_set)
                if conditions.all_columns_pass:
                    cert = solve_wu_certificate(A, block.best_index_set)
                    method = "rank2_ah_conditions"
        except GinvError:
            cert = None

    block_norm = block.best.one_norm
    if cert is not None and _feasible(A, cert, formulation) and _close(cert.objective, block_norm, A):
        return Certification(Outcome.OPTIMAL, goal, rank=r, method=method, block=block,
                             certificate=cert, conditions=conditions)

    lp = min_norm_p1_symmetric(A) if goal is Goal.SYMMETRIC else min_norm_p1_p3(A)
    lp_value = lp.one_norm
    if _close(lp_value, block_norm, A):
        cert = make_certificate(A, lp.dual_W, lp.dual_U)
        if _feasible(A, cert, formulation) and _close(cert.objective, block_norm, A):
            return Certification(Outcome.OPTIMAL, goal, rank=r, method="lp_dual", block=block,
                                 certificate=cert, lp_value=lp_value, conditions=conditions)
        return Certification(Outcome.NOT_CERTIFIED, goal, rank=r, method="lp_dual", block=block,
                             lp_value=lp_value, conditions=conditions,
                             reason="LP dual failed verification")
    if lp_value < block_norm:
        return Certification(Outcome.SUBOPTIMAL, goal, rank=r, method="lp", block=block,
                             lp_value=lp_value, conditions=conditions)
    return Certification(Outcome.NOT_CERTIFIED, goal, rank=r, method="lp", block=block,
                         lp_value=lp_value, conditions=conditions,
                         reason="LP optimum exceeds a feasible block norm")
