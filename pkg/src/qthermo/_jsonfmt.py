"""Deterministic JSON emission with full-precision numbers.

The standard json module does not let callers control float formatting, so
this tiny emitter renders floats at 17 significant digits (lossless for
float64) with stable key order, giving byte-identical documents for equal
inputs. Output is plain JSON, parseable by ``json.loads``.
"""

from __future__ import annotations

import json
import math

import numpy as np


def format_number(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    f = float(x)
    if not math.isfinite(f):
        raise ValueError(f"cannot serialise non-finite number {f}")
    return format(f, ".17g")


def _emit(obj, parts):
    if obj is None:
        parts.append("null")
    elif isinstance(obj, str):
        parts.append(json.dumps(obj))
    elif isinstance(obj, (bool, np.bool_, int, np.integer, float, np.floating)):
        parts.append(format_number(obj))
    elif isinstance(obj, dict):
        parts.append("{")
        for i, (k, v) in enumerate(obj.items()):
            if i:
                parts.append(", ")
            parts.append(json.dumps(str(k)))
            parts.append(": ")
            _emit(v, parts)
        parts.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        parts.append("[")
        for i, v in enumerate(obj):
            if i:
                parts.append(", ")
            _emit(v, parts)
        parts.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    parts = []
    _emit(obj, parts)
    return "".join(parts)
