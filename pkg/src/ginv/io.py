"""Reading and writing matrices: dense text (with p/q fractions) and Matrix Market."""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import InputError
from .serialize import scalar_to_json

_SPLIT = re.compile(r"[\s,;]+")


def _parse_scalar(tok):
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse matrix entry {tok!r}") from exc


def parse_dense(text):
    """Rows on separate lines, entries split by whitespace/commas; '#' starts a comment."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().strip("[]")
        if not line:
            continue
        toks = [t for t in _SPLIT.split(line.replace("[", " ").replace("]", " ")) if t]
        if toks:
            rows.append([_parse_scalar(t) for t in toks])
    if not rows:
        raise InputError("no matrix entries found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputError("rows have different lengths")
    return rows


def parse_matrix_market(text):
    """Matrix Market ``matrix`` files: coordinate or array; real or integer; general,
    symmetric or skew-symmetric."""
    lines = text.splitlines()
    header = lines[0].split()
    if len(header) < 5 or header[0].lower() != "%%matrixmarket" or header[1].lower() != "matrix":
        raise InputError("bad Matrix Market header")
    layout, field, symmetry = (h.lower() for h in header[2:5])
    if layout not in ("coordinate", "array"):
        raise InputError(f"unsupported Matrix Market layout {layout!r}")
    if field not in ("real", "integer", "double"):
        raise InputError(f"unsupported Matrix Market field {field!r}")
    if symmetry not in ("general", "symmetric", "skew-symmetric"):
        raise InputError(f"unsupported Matrix Market symmetry {symmetry!r}")
    body = [ln.strip() for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not body:
        raise InputError("missing Matrix Market size line")
    try:
        size = [int(t) for t in body[0].split()]
    except ValueError as exc:
        raise InputError("bad Matrix Market size line") from exc
    m, n = size[0], size[1]
    if m <= 0 or n <= 0:
        raise InputError("matrix dimensions must be positive")
    A = [[Fraction(0)] * n for _ in range(m)]
    entries = body[1:]
    if layout == "coordinate":
        if len(size) != 3 or len(entries) != size[2]:
            raise InputError("entry count does not match the size line")
        for ln in entries:
            toks = ln.split()
            if len(toks) != 3:
                raise InputError(f"bad coordinate entry {ln!r}")
            i, j = int(toks[0]) - 1, int(toks[1]) - 1
            if not (0 <= i < m and 0 <= j < n):
                raise InputError(f"entry {ln!r} out of range")
            A[i][j] = _parse_scalar(toks[2])
            if symmetry != "general" and i != j:
                A[j][i] = A[i][j] if symmetry == "symmetric" else -A[i][j]
    else:
        values = [_parse_scalar(t) for ln in entries for t in ln.split()]
        # array layout is column-major; symmetric variants store the lower triangle only
        if symmetry == "general":
            slots = [(i, j) for j in range(n) for i in range(m)]
        elif symmetry == "symmetric":
            slots = [(i, j) for j in range(n) for i in range(j, m)]
        else:
            slots = [(i, j) for j in range(n) for i in range(j + 1, m)]
        if len(values) != len(slots):
            raise InputError("array entry count does not match the size line")
        for (i, j), v in zip(slots, values):
            A[i][j] = v
            if symmetry == "symmetric":
                A[j][i] = v
            elif symmetry == "skew-symmetric":
                A[j][i] = -v
    return A


def parse_matrix(text):
    """Parse either format; Matrix Market is recognized by its ``%%MatrixMarket`` banner."""
    if text.lstrip().lower().startswith("%%matrixmarket"):
        return parse_matrix_market(text.lstrip())
    return parse_dense(text)


def read_matrix(path):
    return parse_matrix(Path(path).read_text())


def format_dense(A):
    """Dense text, one row per line; exact entries as integers or p/q."""
    out = []
    for row in np.asarray(A):
        out.append(" ".join(str(scalar_to_json(x)) if not isinstance(x, float) else repr(x) for x in row))
    return "\n".join(out) + "\n"


def write_matrix(path, A):
    Path(path).write_text(format_dense(A))


def format_matrix_market(A):
    """Matrix Market array/real/general (floats) text for interchange with other tools."""
    A = np.asarray(A)
    m, n = A.shape
    lines = ["%%MatrixMarket matrix array real general", f"{m} {n}"]
    lines += [repr(float(A[i, j])) for j in range(n) for i in range(m)]
    return "\n".join(lines) + "\n"
