"""
Deterministic report writers.

Floats are always written with 17 significant digits so that identical
inputs give byte-identical files; NaN and infinities are written as null.
"""
import json
import math
from enum import Enum
from pathlib import Path
from typing import Any, Optional

import numpy as np
import pandas as pd

FLOAT_FORMAT = "%.17g"


def format_float(value: float) -> str:
    if not math.isfinite(value):
        return "null"
    return format(value, ".17g")


class ReportEncoder(json.JSONEncoder):
    """JSONEncoder with fixed float formatting; enums, numpy values and complex numbers ([re, im]) via default."""

    def default(self, obj: Any) -> Any:
        if isinstance(obj, Enum):
            return obj.value
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, (complex, np.complexfloating)):
            return [float(obj.real), float(obj.imag)]
        return super().default(obj)

    def iterencode(self, o: Any, _one_shot: bool = False):
        encoder = json.encoder.encode_basestring_ascii if self.ensure_ascii else json.encoder.encode_basestring
        iterencode = json.encoder._make_iterencode(
            {} if self.check_circular else None,
            self.default,
            encoder,
            self.indent,
            format_float,
            self.key_separator,
            self.item_separator,
            self.sort_keys,
            self.skipkeys,
            _one_shot,
        )
        return iterencode(o, 0)


def dumps_json(obj: Any, indent: int = 2) -> str:
    return json.dumps(obj, cls=ReportEncoder, indent=indent) + "\n"


def dump_json(obj: Any, path: Optional[str] = None) -> str:
    """Serialize obj; write it to path when given. Returns the text."""
    text = dumps_json(obj)
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    return text


def frame_to_csv(frame: pd.DataFrame, path: Optional[str] = None) -> str:
    """Write a DataFrame with the fixed float format; returns the CSV text."""
    text = frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    if path is not None:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    return text


def read_csv_exact(path: str, **kwargs) -> pd.DataFrame:
    """Read a CSV written by frame_to_csv without losing float bits."""
    return pd.read_csv(path, float_precision="round_trip", **kwargs)
