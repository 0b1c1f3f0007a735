"""JSON conventions shared by the CLI and the service.

Complex numbers serialize as [re, im] pairs and parse from pairs, bare
numbers, or strings like "0.31+1.17i".  Output is canonical: keys sorted,
fixed separators, so identical inputs give byte-identical documents.
Non-finite floats (from failed-run sentinels) serialize as null.
"""
from __future__ import annotations

import dataclasses
import json
import math

import numpy as np


def parse_complex(value) -> complex:
    """Accept [re, im], bare numbers, complex, or 'a+bi' style strings."""
    if isinstance(value, complex):
        return value
    if isinstance(value, bool):
        raise ValueError("boolean is not a complex number")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"complex pair needs 2 entries, got {len(value)}")
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, dict) and set(value) <= {"re", "im"}:
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    if isinstance(value, str):
        text = value.replace(" ", "").replace("−", "-")
        text = text.replace("I", "i").replace("i", "j")
        try:
            return complex(text)
        except ValueError:
            raise ValueError(f"cannot parse complex number {value!r}") from None
    raise ValueError(f"cannot parse complex number from {type(value).__name__}")


def complex_pair(z: complex) -> list:
    return [float(z.real), float(z.imag)]


def to_jsonable(obj):
    """Recursively convert to plain JSON types under the shared conventions."""
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, complex):
        if not (math.isfinite(obj.real) and math.isfinite(obj.imag)):
            return None
        return complex_pair(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return to_jsonable(float(obj))
    if isinstance(obj, (np.complexfloating,)):
        return to_jsonable(complex(obj))
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int | None = None) -> str:
    """Canonical JSON text: sorted keys, stable separators."""
    if indent is None:
        return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent)


def config_columns(matrix: np.ndarray) -> list:
    """Column-major serialization for configuration matrices."""
    mat = np.asarray(matrix)
    return [[complex_pair(complex(mat[i, j])) for i in range(mat.shape[0])]
            for j in range(mat.shape[1])]
