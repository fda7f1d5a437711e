import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ginv.errors import DimensionMismatch
from ginv.linalg import as_matrix, pinv_full_col_rank, rank
from ginv.mpcheck import check_mp, is_ah_symmetric, is_generalized_inverse

from conftest import AH_DISPLAYED_H, fr


def test_symmetric_counterexample_a_over_81(sym_counterexample):
    rep = check_mp(sym_counterexample, sym_counterexample / 81)
    assert rep.p1_residual == rep.p2_residual == rep.h_symmetric_residual == 0
    assert rep.reflexive
    assert rep.rank_A == rep.rank_H == 2


def test_identity():
    I = np.eye(3, dtype=int).tolist()
    rep = check_mp(I, I)
    assert rep.p1_residual == rep.p2_residual == rep.p3_residual == rep.p4_residual == 0
    assert is_generalized_inverse(I, I) and is_ah_symmetric(I, I)


def test_ah_counterexample_displayed_h(ah_counterexample):
    rep = check_mp(ah_counterexample, fr(AH_DISPLAYED_H))
    assert rep.p1_residual == rep.p2_residual == rep.p3_residual == 0
    assert rep.reflexive
    assert is_generalized_inverse(ah_counterexample, fr(AH_DISPLAYED_H))
    assert is_ah_symmetric(ah_counterexample, fr(AH_DISPLAYED_H))


def test_zero_matrix_is_not_a_generalized_inverse(four_col):
    assert not is_generalized_inverse(four_col, np.zeros((4, 3), dtype=int).tolist())


def test_non_reflexive_generalized_inverse(sym_counterexample):
    # A^2 = 9A, so I/9 is a generalized inverse of full rank
    rep = check_mp(sym_counterexample, fr(np.eye(3, dtype=int).tolist()) / 9)
    assert rep.p1_residual == 0
    assert rep.rank_H == 3 and not rep.reflexive
    assert rep.p2_residual > 0


def test_dimension_mismatch(four_col):
    with pytest.raises(DimensionMismatch):
        check_mp(four_col, np.zeros((3, 3), dtype=int).tolist())


def test_report_serializes_flat(sym_counterexample):
    d = check_mp(sym_counterexample, sym_counterexample / 81).to_dict()
    assert set(d) == {"p1_residual", "p2_residual", "p3_residual", "p4_residual",
                      "h_symmetric_residual", "rank_A", "rank_H", "reflexive"}
    json.dumps(d)


def test_float_mode_residuals_small(sym_counterexample):
    A = as_matrix(sym_counterexample, "float")
    rep = check_mp(A, A / 81)
    assert rep.p1_residual < 1e-12 and rep.reflexive


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=2, max_size=2), min_size=2, max_size=5))
def test_pinv_of_full_column_rank_satisfies_all_four(cols):
    Ahat = fr(cols)
    if rank(Ahat) < 2:
        return
    rep = check_mp(Ahat, pinv_full_col_rank(Ahat))
    assert rep.p1_residual == rep.p2_residual == rep.p3_residual == rep.p4_residual == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3))
def test_generalized_inverse_rank_lower_bound(A, H):
    A, H = fr(A), fr(H)
    rep = check_mp(A, H)
    if rep.p1_residual == 0:
        assert rep.rank_H >= rep.rank_A
