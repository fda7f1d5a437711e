import io
import json
from fractions import Fraction as F

import numpy as np
import pytest
import scipy.io
from hypothesis import given, settings
from hypothesis import strategies as st

from ginv.cli import main
from ginv.errors import InputError
from ginv.io import format_dense, format_matrix_market, parse_dense, parse_matrix, read_matrix

from conftest import AH_COUNTEREXAMPLE, FOUR_COL, SYM_COUNTEREXAMPLE


def test_parse_dense_variants():
    text = "# comment\n[1, 2/3]\n[-4  0.5]  # trailing\n"
    assert parse_dense(text) == [[1, F(2, 3)], [-4, F(1, 2)]]


@pytest.mark.parametrize("text", ["", "1 2\n3\n", "1 x\n", "1/0\n"])
def test_parse_dense_rejects(text):
    with pytest.raises(InputError):
        parse_dense(text)


MM_COORD_SYM = """%%MatrixMarket matrix coordinate integer symmetric
% lower triangle
3 3 6
1 1 5
2 1 4
2 2 5
3 1 2
3 3 8
3 2 -2
"""


def test_matrix_market_symmetric_against_scipy():
    ours = parse_matrix(MM_COORD_SYM)
    assert ours == SYM_COUNTEREXAMPLE
    ref = scipy.io.mmread(io.StringIO(MM_COORD_SYM))
    assert np.array_equal(np.asarray(ref.todense() if hasattr(ref, "todense") else ref, dtype=float),
                          np.array(ours, dtype=float))


def test_matrix_market_array_roundtrip():
    text = format_matrix_market(np.array(FOUR_COL, dtype=float))
    assert parse_matrix(text) == FOUR_COL
    ref = scipy.io.mmread(io.StringIO(text))
    assert np.array_equal(ref, np.array(FOUR_COL, dtype=float))


def test_matrix_market_skew_array():
    text = "%%MatrixMarket matrix array real skew-symmetric\n2 2\n3\n"
    assert parse_matrix(text) == [[0, -3], [3, 0]]


@pytest.mark.parametrize("text", [
    "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1\n",
    "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1\n",
    "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1\n",
    "%%MatrixMarket vector coordinate real general\n",
])
def test_matrix_market_rejects(text):
    with pytest.raises(InputError):
        parse_matrix(text)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000),
                         min_size=3, max_size=3), min_size=1, max_size=4))
def test_dense_roundtrip_exact(rows):
    assert parse_dense(format_dense(np.array(rows, dtype=object))) == rows


def _write(tmp_path, rows, name="A.txt"):
    p = tmp_path / name
    p.write_text(format_dense(np.array(rows, dtype=object)))
    return p


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


def test_construct_sym(tmp_path, capsys):
    p = _write(tmp_path, SYM_COUNTEREXAMPLE)
    code, rep, _ = _run(capsys, ["construct", str(p), "--goal", "sym"])
    assert code == 0
    assert rep["results"]["indices"] == [1, 3]
    assert rep["results"]["one_norm"] == "17/36"
    assert rep["results"]["numeric_mode"] == "exact"
    assert set(rep) == {"input_digest", "command", "results", "timing_ms"}
    H = read_matrix(tmp_path / "A.txt.construct.out")
    assert H == [[F(2, 9), 0, F(-1, 18)], [0, 0, 0], [F(-1, 18), 0, F(5, 36)]]


def test_construct_roundtrip_and_indices(tmp_path, capsys):
    p = _write(tmp_path, FOUR_COL)
    code, rep, _ = _run(capsys, ["construct", str(p), "--goal", "ah", "--indices", "1,2"])
    assert code == 0 and rep["results"]["one_norm"] == 3
    H = read_matrix(tmp_path / "A.txt.construct.out")
    assert H == [[F(x) for x in r] for r in rep["results"]["H"]]
    assert H[:2] == [[F(5, 8), F(5, 8), F(-3, 4)], [F(-1, 4), F(-1, 4), F(1, 2)]]


def test_construct_identity(tmp_path, capsys):
    p = _write(tmp_path, np.eye(3, dtype=int).tolist())
    code, rep, _ = _run(capsys, ["construct", str(p), "--goal", "sym", "--quiet"])
    assert code == 0 and rep["results"]["H"] == np.eye(3, dtype=int).tolist()
    assert not (tmp_path / "A.txt.construct.out").exists()


def test_minimize(tmp_path, capsys):
    p = _write(tmp_path, [[1, 2], [2, 4]])
    code, rep, _ = _run(capsys, ["minimize", str(p), "--formulation", "p1sym"])
    assert code == 0 and rep["results"]["one_norm"] == "1/4"
    p = _write(tmp_path, AH_COUNTEREXAMPLE, "B.txt")
    code, rep, _ = _run(capsys, ["minimize", str(p), "--formulation", "p1p3", "--float"])
    assert code == 0 and rep["results"]["one_norm"] == pytest.approx(25 / 24, abs=1e-9)
    assert rep["results"]["numeric_mode"] == "float"


@pytest.mark.parametrize("rows, goal, expected", [
    (SYM_COUNTEREXAMPLE, "sym", 4),
    (FOUR_COL, "ah", 0),
    (AH_COUNTEREXAMPLE, "ah", 4),
    ([[1, 2], [3, 4]], "sym", 5),
])
def test_certify_exit_codes(tmp_path, capsys, rows, goal, expected):
    p = _write(tmp_path, rows)
    code, rep, _ = _run(capsys, ["certify", str(p), "--goal", goal])
    assert code == expected
    assert rep["results"]["outcome"] in ("optimal", "suboptimal_witness", "not_certified")


def test_compare(tmp_path, capsys):
    p = _write(tmp_path, SYM_COUNTEREXAMPLE)
    code, rep, _ = _run(capsys, ["compare", str(p)])
    assert code == 0
    sym = rep["results"]["symmetric"]
    assert [b["one_norm"] for b in sym["blocks"]] == [2, "17/36", "17/36"]
    assert sym["lp_p1sym"] == "1/3" and sym["gap"] == "5/36"
    p = _write(tmp_path, [[1, 0], [0, 2]], "D.txt")
    code, rep, _ = _run(capsys, ["compare", str(p)])
    assert rep["results"]["symmetric"]["gap"] == 0 and rep["results"]["ah"]["gap"] == 0


def test_error_exit_codes(tmp_path, capsys):
    p = _write(tmp_path, [[0, 0], [0, 0]])
    code, rep, err = _run(capsys, ["minimize", str(p), "--formulation", "p1"])
    assert code == 3 and rep is None
    assert json.loads(err)["error"] == "DegenerateInput"
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n3\n")
    assert _run(capsys, ["minimize", str(bad), "--formulation", "p1"])[0] == 2
    assert _run(capsys, ["minimize", str(tmp_path / "missing.txt"), "--formulation", "p1"])[0] == 2
    p = _write(tmp_path, [[1, 2], [3, 4]], "N.txt")
    assert _run(capsys, ["construct", str(p), "--goal", "sym"])[0] == 2
    assert _run(capsys, ["construct", str(p), "--goal", "ah", "--indices", "0,1"])[0] == 2


def test_reruns_are_byte_identical_apart_from_timing(tmp_path, capsys):
    p = _write(tmp_path, AH_COUNTEREXAMPLE)
    outs = []
    for _ in range(2):
        main(["minimize", str(p), "--formulation", "p1p3"])
        rep = json.loads(capsys.readouterr().out)
        rep.pop("timing_ms")
        outs.append((json.dumps(rep, sort_keys=True), (tmp_path / "A.txt.minimize.out").read_bytes()))
    assert outs[0] == outs[1]
