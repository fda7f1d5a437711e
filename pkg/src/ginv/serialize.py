"""JSON encoding of exact and float scalars and matrices.

Exact rationals are written as ints when integral and as ``"p/q"`` strings
otherwise, so reports round-trip without loss.
"""
from __future__ import annotations

import dataclasses
import enum
from fractions import Fraction

import numpy as np


def scalar_to_json(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x)
    return x


def matrix_to_json(A):
    if A is None:
        return None
    return [[scalar_to_json(x) for x in row] for row in np.asarray(A)]


def scalar_from_json(x):
    if isinstance(x, str):
        return Fraction(x)
    return x


def to_jsonable(obj):
    """Recursively convert dataclasses, arrays and scalars into JSON-ready values."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        if hasattr(obj, "to_dict"):
            return obj.to_dict()
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, np.ndarray):
        if obj.ndim == 2:
            return matrix_to_json(obj)
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    return scalar_to_json(obj)
