import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import closed, multiplier
from toruspdo.helper.errors import NonFiniteSample, WindowExhausted, WindowTooLarge
from toruspdo.symbol import (
    Symbol,
    SymbolKind,
    ToroidalGrid,
    bracket,
    fourier_table,
    grid_from_table,
    sample_symbol,
    sup_abs_per_k,
)


def test_bracket():
    assert bracket(0) == 1.0
    assert bracket(3) == pytest.approx(np.sqrt(10.0))
    assert_allclose(bracket(np.array([-2, 2])), np.sqrt(5.0))


def test_sample_closed_form_grid_layout(shift):
    grid = sample_symbol(shift, 16, 4)
    assert grid.values.shape == (16, 9)
    assert grid.k_start == -4 and grid.k_stop == 4 and grid.K == 4
    assert_allclose(grid.column(3), np.exp(1j * grid.x), atol=1e-15)
    assert not grid.multiplier


def test_sample_multiplier_is_constant_in_x():
    grid = sample_symbol(multiplier("<k>^(-1)"), 8, 5)
    assert grid.multiplier
    assert_allclose(grid.values, np.broadcast_to(1.0 / bracket(np.arange(-5, 6)), (8, 11)), rtol=1e-14)


def test_sample_rejects_non_finite():
    sym = Symbol.closed_form(lambda x, k: np.where(k == 0, np.nan, 1.0) + 0 * x, K=3, Q=8)
    with pytest.raises(NonFiniteSample):
        sample_symbol(sym, 8, 3)


def test_sampled_symbol_window_too_large(shift):
    frozen = Symbol.sampled(sample_symbol(shift, 16, 4))
    with pytest.raises(WindowTooLarge):
        sample_symbol(frozen, 16, 8)


def test_sampled_symbol_resamples_in_x():
    source = sample_symbol(closed("cos(x)"), 16, 2)
    frozen = Symbol.sampled(source)
    fine = sample_symbol(frozen, 64, 2)
    assert_allclose(fine.column(0), np.cos(fine.x), atol=1e-12)


def test_fourier_table_of_trigonometric_polynomial():
    table = fourier_table(sample_symbol(closed("2+exp(i*x)"), 32, 4), 3)
    assert table.coeff(0, 1) == pytest.approx(2.0)
    assert table.coeff(1, -4) == pytest.approx(1.0)
    assert abs(table.coeff(-1, 0)) < 1e-15
    assert table.coeff(7, 0) == 0j
    assert_allclose(table.centers(), 2.0, atol=1e-15)


def test_fourier_table_of_multiplier_is_exactly_diagonal():
    table = fourier_table(sample_symbol(multiplier("<k>"), 16, 4), 3)
    assert_array_equal(np.delete(table.coeffs, 3, axis=0), 0.0)


def test_fourier_table_too_wide():
    grid = sample_symbol(closed("cos(x)"), 8, 2)
    with pytest.raises(WindowTooLarge):
        fourier_table(grid, 4)


def test_grid_from_table_inverts_fourier_table():
    grid = sample_symbol(closed("k*cos(2*x) + sin(x)"), 32, 6)
    back = grid_from_table(fourier_table(grid, 4), 32)
    assert_allclose(back.values, grid.values, atol=1e-12)


def test_shifted_table():
    table = fourier_table(sample_symbol(closed("k^2 + exp(i*x)/4"), 16, 4), 2)
    shifted = table.shifted(0.5)
    assert_allclose(shifted.centers(), np.arange(-4, 5) ** 2 - 0.5, atol=1e-12)
    assert_array_equal(shifted.row(1), table.row(1))


def test_restrict_and_k_index():
    grid = sample_symbol(closed("k + 0*x"), 8, 4)
    sub = grid.restrict(-1, 2)
    assert sub.k_start == -1 and sub.nk == 4
    assert_allclose(sub.column(2), 2.0)
    with pytest.raises(WindowExhausted):
        grid.k_index(5)


def test_symmetric_grid_requires_odd_width():
    with pytest.raises(ValueError):
        ToroidalGrid.symmetric(np.ones((4, 4)))
    assert ToroidalGrid.symmetric(np.ones((4, 5))).k_start == -2


def test_sup_abs_per_k():
    grid = sample_symbol(closed("exp(i*x)*<k>^(-1)"), 16, 3)
    assert_allclose(sup_abs_per_k(grid), 1.0 / bracket(np.arange(-3, 4)), rtol=1e-14)


def test_scaled_and_with_window(shift):
    doubled = shift.scaled(2.0)
    assert_allclose(doubled.sample(8, 1).values, 2.0 * shift.sample(8, 1).values)
    wide = shift.with_window(K=10)
    assert wide.k_window == 10 and wide.kind is SymbolKind.CLOSED_FORM


def test_symbol_validates_resolution():
    with pytest.raises(ValueError):
        Symbol.closed_form(lambda x, k: x + k, K=4, Q=12)
