"""Deterministic JSON rendering of command reports."""
import json
import math
from typing import Any

import numpy as np
from pydantic import BaseModel


def format_number(value: float) -> str:
    """17 significant digits; NaN and infinities become ``null``."""
    v = float(value)
    if not math.isfinite(v):
        return "null"
    text = "%.17g" % v
    if text in ("-0", "0"):
        return "0"
    return text


def to_plain(value: Any) -> Any:
    """Convert models, numpy values and tuples into JSON-compatible Python objects."""
    if isinstance(value, BaseModel):
        return to_plain(value.model_dump(by_alias=True))
    if isinstance(value, dict):
        return {str(k): to_plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [to_plain(v) for v in value.tolist()]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def _json_string(text: str) -> str:
    return json.dumps(text, ensure_ascii=False)


def _render(value: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if value is None:
        return "null"
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_number(value)
    if isinstance(value, str):
        return _json_string(value)
    if isinstance(value, dict):
        if not value:
            return "{}"
        items = [
            f"{pad}{_json_string(k)}: {_render(value[k], indent, level + 1)}" for k in sorted(value)
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
            return "[" + ", ".join(_render(v, indent, level) for v in value) + "]"
        items = [f"{pad}{_render(v, indent, level + 1)}" for v in value]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return _json_string(str(value))


def render_json(report: Any, indent: int = 2) -> str:
    """Sorted-key JSON with %.17g floats, byte-identical for identical input."""
    return _render(to_plain(report), indent, 0) + "\n"

