"""JSON rendering of result objects.

Exact rationals are rendered both ways ({"ratio": "p/q", "value": float});
dataclasses and numpy scalars flatten to plain JSON types. Serialization is
key-sorted so identical results are byte-identical documents.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction

import numpy as np


def json_ready(obj):
    if isinstance(obj, Fraction):
        return {"ratio": f"{obj.numerator}/{obj.denominator}",
                "value": float(obj)}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: json_ready(getattr(obj, f.name))
                for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): json_ready(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_ready(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [json_ready(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(json_ready(obj), sort_keys=True)
