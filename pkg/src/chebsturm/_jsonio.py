"""Byte-stable JSON and CSV emission.

Floats are printed as their shortest round-trip representation and keys keep insertion order, so
the same report always serializes to the same bytes.  Non-finite floats become
the strings ``"inf"``, ``"-inf"`` and ``"nan"``.
"""
from __future__ import annotations

import json
from collections.abc import Mapping

import numpy as np

__all__ = ["dumps", "to_plain", "csv_table"]


def _float(x: float) -> str:
    if np.isnan(x):
        return '"nan"'
    if np.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return repr(float(x))


def to_plain(obj):
    """Convert numpy scalars/arrays, tuples and dataclass-like reports to plain containers."""
    if hasattr(obj, "to_json"):
        return to_plain(obj.to_json())
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, Mapping):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    return obj


def _emit(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, str)):
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _float(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """Serialize ``obj`` deterministically; ends with a newline."""
    return _emit(to_plain(obj), indent, 0) + "\n"


def csv_table(columns: Mapping[str, list]) -> str:
    """Equal-length columns as CSV with a header row."""
    names = list(columns)
    cols = [to_plain(columns[n]) for n in names]
    if len({len(c) for c in cols}) > 1:
        raise ValueError("CSV columns must have equal length")
    lines = [",".join(names)]
    for row in zip(*cols):
        lines.append(",".join(_float(v).strip('"') if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"
