from pathlib import Path

import numpy as np
import pytest

from toruspdo.symbol import FourierTable, Symbol, fourier_table, sample_symbol
from toruspdo.symbol.expression import compile_closed_form, compile_multiplier

SYMBOLS_DIR = Path(__file__).resolve().parent.parent / "symbols"


@pytest.fixture(autouse=True)
def quiet_console(monkeypatch):
    monkeypatch.setenv("TORUSPDO_QUIET", "1")
    monkeypatch.delenv("TORUSPDO_DENSE_LIMIT", raising=False)
    monkeypatch.delenv("TORUSPDO_THREADS", raising=False)


@pytest.fixture
def symbols_dir() -> Path:
    return SYMBOLS_DIR


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


def closed(expr: str, K: int = 32, Q: int = 256) -> Symbol:
    return Symbol.closed_form(compile_closed_form(expr), K=K, Q=Q, name=expr)


def multiplier(expr: str, K: int = 32, Q: int = 256) -> Symbol:
    return Symbol.multiplier(compile_multiplier(expr), K=K, Q=Q, name=expr)


def table_of(sym: Symbol, M: int, Q: int = None, K: int = None) -> FourierTable:
    grid = sample_symbol(sym, sym.x_resolution if Q is None else Q, sym.k_window if K is None else K)
    return fourier_table(grid, M)


@pytest.fixture
def shift():
    return closed("exp(i*x)")


@pytest.fixture
def square_plus_shift():
    return closed("k^2 + exp(i*x)/4", K=64)


@pytest.fixture
def multiplication():
    return closed("2+exp(i*x)", K=64)


@pytest.fixture
def inverse_bracket():
    return multiplier("<k>^(-1)", K=64)
