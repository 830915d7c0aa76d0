import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from toruspdo.symbol import (
    indicator_symbol,
    product_symbol,
    rademacher,
    rademacher_bound_sums,
    rademacher_coefficients,
    rademacher_symbol,
    sample_symbol,
    sum_symbol,
    sup_abs_per_k,
)


def test_indicator_column_support():
    grid = sample_symbol(indicator_symbol(K=14, Q=4096), 4096, 14)
    counts = grid.values.real.sum(axis=0)
    ks = np.abs(grid.ks)
    # 4096 / 2^|k| grid points, and only x = 0 once the interval is finer than the grid
    assert_array_equal(counts, np.maximum(4096 // 2 ** ks, 1))
    assert_array_equal(grid.column(3)[:512], 1.0)
    assert grid.column(3)[512] == 0.0


def test_rademacher_functions():
    x = np.array([0.0, np.pi / 2, np.pi, 3 * np.pi / 2])
    assert_array_equal(rademacher(1, x), [1, 1, -1, -1])
    assert_array_equal(rademacher(2, x), [1, -1, 1, -1])


def test_rademacher_coefficients_at_zero():
    coeffs = rademacher_coefficients(np.array([0.0]), 3)
    assert_allclose(coeffs[:, 0], [1 / 8, 1 / 16, 1 / 32])


def test_rademacher_coefficient_modulus():
    k = np.array([5.0])
    coeffs = rademacher_coefficients(k, 4)
    a = 2 * np.pi / 2.0 ** (np.arange(1, 5) + 2)
    assert_allclose(np.abs(coeffs[:, 0]), np.abs(np.exp(1j * 5 * a) - 1) / (2 * np.pi * 5), rtol=1e-12)


def test_rademacher_symbol_decay_bound():
    sym = rademacher_symbol(p=1.5, terms=64, K=64, Q=4096)
    ks = np.array([16, 32, 64])
    x = (2 * np.pi * np.arange(4096) / 4096).reshape(-1, 1)
    sup = np.abs(sym.evaluator(x, ks.reshape(1, -1).astype(float))).max(axis=0)
    bound = rademacher_bound_sums(ks, 1.5, 64) / (2 * np.pi * ks)
    assert np.all(sup <= bound * (1 + 1e-12))
    # C |k|^(-1/2) with C fitted at |k| = 16 keeps bounding the symbol at 32 and 64
    C = bound[0] * np.sqrt(16.0)
    assert np.all(sup[1:] <= C / np.sqrt(ks[1:]))


def test_rademacher_symbol_carries_note():
    sym = rademacher_symbol()
    assert any("non-compact" in note for note in sym.notes)
    with pytest.raises(ValueError):
        rademacher_symbol(p=1.0)


def test_product_and_sum_symbols():
    prod = sample_symbol(product_symbol("<k>", "2+exp(i*x)", K=4, Q=16), 16, 4)
    assert prod.column(0)[0] == pytest.approx(3.0)
    assert_allclose(sup_abs_per_k(prod), 3.0 * np.sqrt(1.0 + np.arange(-4, 5) ** 2), rtol=1e-12)

    total = sample_symbol(sum_symbol("k^2", "exp(i*x)/4", K=4, Q=16), 16, 4)
    assert total.column(2)[0] == pytest.approx(4.25)


def test_product_accepts_callables():
    sym = product_symbol(lambda k: k, lambda x: np.cos(x), K=2, Q=8)
    grid = sample_symbol(sym, 8, 2)
    assert_allclose(grid.column(2), 2 * np.cos(grid.x), atol=1e-15)
