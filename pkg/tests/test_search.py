import json
from fractions import Fraction as F
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginv.blocks import column_block, symmetric_block
from ginv.errors import DegenerateInput, NotSymmetric, RankDeficientBlock, SingularBlock
from ginv.linalg import as_matrix, rank
from ginv.normmin import min_norm_p1_p3, min_norm_p1_symmetric
from ginv.search import Goal, Outcome, best_column_block, best_symmetric_block, certify_block_optimality

from conftest import fr


def test_best_symmetric_counterexample(sym_counterexample):
    res = best_symmetric_block(sym_counterexample)
    assert res.best_index_set == (0, 2)
    assert res.best.one_norm == F(17, 36)
    assert res.candidates_examined == 3
    assert dict(res.per_candidate_norms) == {(0, 1): 2, (0, 2): F(17, 36), (1, 2): F(17, 36)}


def test_best_symmetric_diagonal():
    res = best_symmetric_block([[1, 0], [0, 2]])
    assert res.best_index_set == (0, 1)
    assert res.best.H.tolist() == [[1, 0], [0, F(1, 2)]]


def test_best_symmetric_rank_one():
    res = best_symmetric_block([[1, 2, 3], [2, 4, 6], [3, 6, 9]])
    assert res.best_index_set == (2,) and res.best.one_norm == F(1, 9)


def test_best_column_counterexample(ah_counterexample):
    res = best_column_block(ah_counterexample)
    # the listed norms belong to (1,2),(1,3),(2,3) in the order 7/6, 31/24, 31/24
    assert res.best_index_set == (0, 1)
    assert res.best.one_norm == F(7, 6)


def test_best_column_four_columns(four_col):
    res = best_column_block(four_col)
    assert res.best_index_set == (0, 1) and res.best.one_norm == 3


def test_best_column_rank_one():
    res = best_column_block([[1, 2], [0, 0]])
    assert res.best_index_set == (1,) and res.best.one_norm == F(1, 2)


def test_errors():
    with pytest.raises(NotSymmetric):
        best_symmetric_block([[1, 2], [3, 4]])
    with pytest.raises(DegenerateInput):
        best_column_block([[0, 0]])


def test_workers_give_same_answer(sym_counterexample, four_col):
    a = best_symmetric_block(sym_counterexample)
    b = best_symmetric_block(sym_counterexample, workers=2)
    assert a.best_index_set == b.best_index_set and a.per_candidate_norms == b.per_candidate_norms
    assert best_column_block(four_col, workers=2).best_index_set == (0, 1)


def test_certify_fixtures(sym_counterexample, four_col, ah_counterexample):
    c = certify_block_optimality(sym_counterexample, "sym")
    assert c.outcome is Outcome.SUBOPTIMAL
    assert c.lp_value <= F(34, 81) < F(17, 36)

    c = certify_block_optimality(four_col, Goal.AH_SYMMETRIC)
    assert c.outcome is Outcome.OPTIMAL
    assert c.method == "rank2_ah_conditions" and c.conditions.all_columns_pass
    assert c.certificate.objective == 3

    c = certify_block_optimality(ah_counterexample, "ah")
    assert c.outcome is Outcome.SUBOPTIMAL
    assert c.lp_value < F(7, 6) == c.block_norm
    d = c.to_dict(one_based=True)
    json.dumps(d)
    assert d["conditions"]["T"] == [1, 2]


def test_certify_closed_form_paths():
    c = certify_block_optimality([[1, 2], [2, 4]], "sym")
    assert c.outcome is Outcome.OPTIMAL and c.method == "rank1_symmetric"
    c = certify_block_optimality([[1, 1, 0], [1, 2, 1], [0, 1, 1]], "sym")
    assert c.outcome is Outcome.OPTIMAL and c.method == "rank2_symmetric_nonnegative"
    c = certify_block_optimality([[1, 1], [2, 2]], "ah")
    assert c.outcome is Outcome.OPTIMAL and c.method == "rank1_ah"


def test_certify_negative_rank_one_uses_lp():
    c = certify_block_optimality([[-1, -2], [-2, -4]], "sym")
    assert c.outcome is Outcome.OPTIMAL and c.method == "lp_dual"


def test_certify_degenerate_and_nonsymmetric():
    assert certify_block_optimality([[0, 0], [0, 0]], "sym").outcome is Outcome.NOT_CERTIFIED
    assert certify_block_optimality([[1, 2], [3, 4]], "sym").outcome is Outcome.NOT_CERTIFIED


def _brute_symmetric(A):
    r = rank(A)
    vals = []
    for S in combinations(range(A.shape[0]), r):
        try:
            vals.append(symmetric_block(A, S).one_norm)
        except SingularBlock:
            pass
    return min(vals)


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=1, max_size=3)))
def test_block_never_beats_lp_symmetric(X):
    X = fr(X)
    A = X.T @ X
    if rank(A) == 0:
        return
    res = best_symmetric_block(A)
    assert res.best.one_norm == _brute_symmetric(A)
    assert min_norm_p1_symmetric(A).one_norm <= res.best.one_norm


@settings(max_examples=25, deadline=None)
@given(st.tuples(st.integers(2, 4), st.integers(2, 4)).flatmap(
    lambda t: st.lists(st.lists(st.integers(-3, 3), min_size=t[1], max_size=t[1]),
                       min_size=t[0], max_size=t[0])))
def test_block_never_beats_lp_ah(rows):
    A = fr(rows)
    r = rank(A)
    if r == 0:
        return
    res = best_column_block(A)
    brute = []
    for T in combinations(range(A.shape[1]), r):
        try:
            brute.append(column_block(A, T).one_norm)
        except RankDeficientBlock:
            pass
    assert res.best.one_norm == min(brute)
    assert min_norm_p1_p3(A).one_norm <= res.best.one_norm
