"""
Matrix dump: a CSV of (j, k, re, im) plus a JSON header next to it
({stem}.json) holding n, M (the band), trusted_radius and a label.
Both files use 17 significant digits, so a load reproduces every bit.
"""
import json
import os
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from toruspdo.helper.errors import ParseError
from toruspdo.helper.output import dump_json, frame_to_csv, read_csv_exact
from toruspdo.matrix.assoc import AssocMatrix


def header_path(csv_path: str) -> str:
    return str(Path(csv_path).with_suffix(".json"))


def matrix_frame(matrix: AssocMatrix) -> pd.DataFrame:
    """All entries in row-major (j, k) order."""
    j, k = np.meshgrid(matrix.indices, matrix.indices, indexing="ij")
    return pd.DataFrame({
        "j": j.ravel(),
        "k": k.ravel(),
        "re": matrix.entries.real.ravel(),
        "im": matrix.entries.imag.ravel(),
    })


def matrix_header(matrix: AssocMatrix, label: str = "") -> dict:
    return {"n": matrix.n, "M": matrix.band, "trusted_radius": matrix.trusted_radius, "label": label}


def save_matrix(matrix: AssocMatrix, csv_path: Optional[str] = None, label: str = "") -> str:
    """
    Write the CSV (and its JSON header when a path is given).

    Returns:
        The CSV text
    """
    text = frame_to_csv(matrix_frame(matrix), csv_path)
    if csv_path is not None:
        dump_json(matrix_header(matrix, label), header_path(csv_path))
    return text


def load_matrix(csv_path: str) -> AssocMatrix:
    """
    Read a dump written by save_matrix.

    Raises:
        ParseError: if a file is missing or the CSV does not match its header
    """
    head = header_path(csv_path)
    if not os.path.exists(csv_path) or not os.path.exists(head):
        raise ParseError(f"Matrix dump needs both {csv_path} and {head}")
    with open(head, "r", encoding="utf-8") as f:
        header = json.load(f)
    n = int(header["n"])
    frame = read_csv_exact(csv_path)
    size = 2 * n + 1
    if len(frame) != size * size:
        raise ParseError(f"{csv_path} holds {len(frame)} entries, header n={n} needs {size * size}")
    entries = np.zeros((size, size), dtype=complex)
    entries[frame["j"].to_numpy(int) + n, frame["k"].to_numpy(int) + n] = (
        frame["re"].to_numpy(float) + 1j * frame["im"].to_numpy(float)
    )
    return AssocMatrix(n, entries, int(header["M"]), int(header["trusted_radius"]))
