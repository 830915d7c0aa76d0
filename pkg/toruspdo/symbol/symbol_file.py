"""
Symbol spec files (JSON).

    {"kind": "closed_form", "expr": "exp(i*x)*<k>^(-1)", "Q": 1024, "K": 64}
    {"kind": "multiplier",  "expr": "<k>^(-1)"}
    {"kind": "sampled",     "expr": "2+cos(x)", "Q": 256, "K": 32}
    {"kind": "sampled",     "path": "grid.csv"}
    {"kind": "catalog",     "name": "indicator", "params": {}, "Q": 4096, "K": 16}

Q and K are optional and default to the run configuration. A relative
"path" is resolved against the directory of the spec file.
"""
import json
import os
from typing import Optional

import numpy as np
import pandas as pd

from toruspdo.helper.console import log
from toruspdo.helper.errors import ParseError
from toruspdo.helper.output import frame_to_csv, read_csv_exact
from toruspdo.symbol.catalog import CATALOG
from toruspdo.symbol.expression import compile_closed_form, compile_multiplier, depends_on_x
from toruspdo.symbol.symbol import Symbol, ToroidalGrid, sample_symbol

SPEC_KINDS = ("closed_form", "multiplier", "sampled", "catalog")
_KNOWN_KEYS = {"kind", "expr", "Q", "K", "name", "params", "path", "notes"}


def grid_frame(grid: ToroidalGrid) -> pd.DataFrame:
    """Rows (q, k, re, im) in q-major order."""
    q, k = np.meshgrid(np.arange(grid.Q), grid.ks, indexing="ij")
    return pd.DataFrame({
        "q": q.ravel(),
        "k": k.ravel(),
        "re": grid.values.real.ravel(),
        "im": grid.values.imag.ravel(),
    })


def write_grid_csv(grid: ToroidalGrid, path: Optional[str] = None) -> str:
    return frame_to_csv(grid_frame(grid), path)


def read_grid_csv(path: str, multiplier: bool = False) -> ToroidalGrid:
    """Read a (q, k, re, im) CSV back into a grid; every (q, k) pair must be present once."""
    frame = read_csv_exact(path)
    missing = {"q", "k", "re", "im"} - set(frame.columns)
    if missing:
        raise ParseError(f"Grid CSV {path} lacks columns {sorted(missing)}")
    Q = int(frame["q"].max()) + 1
    k_start, k_stop = int(frame["k"].min()), int(frame["k"].max())
    nk = k_stop - k_start + 1
    if len(frame) != Q * nk or frame.duplicated(["q", "k"]).any():
        raise ParseError(f"Grid CSV {path} must list every (q, k) pair exactly once")
    values = np.zeros((Q, nk), dtype=complex)
    values[frame["q"].to_numpy(int), frame["k"].to_numpy(int) - k_start] = (
        frame["re"].to_numpy(float) + 1j * frame["im"].to_numpy(float)
    )
    return ToroidalGrid(values, k_start, multiplier)


def symbol_from_spec(spec: dict, Q: int = 1024, K: int = 64, base_dir: str = ".") -> Symbol:
    """
    Build a Symbol from a parsed spec dictionary.

    Raises:
        ParseError: on an unknown kind, missing fields or a bad expression
    """
    if not isinstance(spec, dict):
        raise ParseError("Symbol spec must be a JSON object")
    unknown = sorted(set(spec) - _KNOWN_KEYS)
    if unknown:
        raise ParseError(f"Unknown symbol spec keys {unknown}")
    kind = spec.get("kind")
    if kind not in SPEC_KINDS:
        raise ParseError(f"Unknown symbol kind {kind!r}; expected one of {SPEC_KINDS}")

    Q = int(spec.get("Q", Q))
    K = int(spec.get("K", K))
    name = spec.get("name") or spec.get("expr") or kind
    notes = tuple(spec.get("notes", ()))

    if kind == "catalog":
        factory = CATALOG.get(spec.get("name"))
        if factory is None:
            raise ParseError(f"Unknown catalog symbol {spec.get('name')!r}; expected one of {sorted(CATALOG)}")
        params = dict(spec.get("params", {}))
        try:
            sym = factory(K=K, Q=Q, **params)
        except TypeError as e:
            raise ParseError(f"Bad params for catalog symbol {spec['name']!r}: {e}")
        return sym

    if kind == "sampled" and "path" in spec:
        path = spec["path"]
        if not os.path.isabs(path):
            path = os.path.join(base_dir, path)
        grid = read_grid_csv(path)
        return Symbol.sampled(grid, name=name, notes=notes)

    expr = spec.get("expr")
    if not isinstance(expr, str):
        raise ParseError(f"Symbol spec of kind {kind!r} needs an 'expr' string")

    if kind == "multiplier":
        if depends_on_x(expr):
            raise ParseError(f"Multiplier expression {expr!r} must not depend on x")
        return Symbol.multiplier(compile_multiplier(expr), K=K, Q=Q, name=name, notes=notes)

    closed = Symbol.closed_form(compile_closed_form(expr), K=K, Q=Q, name=name, notes=notes)
    if kind == "closed_form":
        if not depends_on_x(expr):
            log("SYMBOL", f"{name}: expression does not depend on x, treating it as a multiplier")
            return Symbol.multiplier(compile_multiplier(expr), K=K, Q=Q, name=name, notes=notes)
        return closed
    # sampled from an expression: frozen to a grid now
    grid = sample_symbol(closed, Q, K)
    return Symbol.sampled(ToroidalGrid(grid.values, grid.k_start, not depends_on_x(expr)), name=name, notes=notes)


def load_symbol_file(path: str, Q: int = 1024, K: int = 64) -> Symbol:
    """
    Load a symbol spec file.

    Args:
        path: JSON spec file
        Q, K: Defaults used when the file does not fix them

    Returns:
        Symbol

    Raises:
        ParseError: if the file is missing, is not JSON, or describes an invalid symbol
    """
    if not os.path.exists(path):
        raise ParseError(f"Symbol file not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        try:
            spec = json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"Symbol file {path} is not valid JSON: {e}")
    sym = symbol_from_spec(spec, Q=Q, K=K, base_dir=os.path.dirname(os.path.abspath(path)))
    log("SYMBOL", f"Loaded {sym.kind.value} symbol {sym.name!r} from {path} (Q={sym.x_resolution}, K={sym.k_window})")
    return sym
