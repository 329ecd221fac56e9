"""Single JSON serialization path shared by the CLI and the HTTP API.

Floats are emitted with at most 9 significant digits; NaN/Inf become null so
payloads are always strict JSON.
"""

import dataclasses
import json
import math

import numpy as np

__all__ = ["jsonable", "dumps"]


def jsonable(obj):
    """Recursively convert to plain JSON-safe values."""
    if obj is None or isinstance(obj, (str, bool, int)):
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            return None
        return float(f"{x:.9g}")
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return [jsonable(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {
            f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(jsonable(obj), separators=(",", ":"), allow_nan=False)
