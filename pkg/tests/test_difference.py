import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import closed, multiplier, table_of
from toruspdo.helper.errors import WindowExhausted
from toruspdo.symbol import d_x, delta_k, sample_symbol, x_derivative
from toruspdo.symbol.difference import inverse_factorial, mode_factors, newton_parts


def test_delta_k_of_polynomial():
    grid = sample_symbol(multiplier("k^3"), 8, 8)
    third = delta_k(grid, 3)
    assert (third.k_start, third.k_stop) == (-8, 5)
    assert_allclose(third.values, 6.0, atol=1e-9)
    assert_allclose(delta_k(grid, 4).values, 0.0, atol=1e-9)


def test_delta_k_on_tables_and_arrays():
    table = table_of(closed("k*exp(i*x)"), 2, Q=16, K=4)
    first = delta_k(table, 1)
    assert first.M == 2
    assert_allclose(first.row(1), 1.0, atol=1e-12)
    assert_array_equal(delta_k(np.array([[1.0, 4.0, 9.0]]), 2), [[2.0]])
    assert delta_k(table, 0) is table


def test_delta_k_exhausts_the_window():
    grid = sample_symbol(closed("exp(i*x)"), 8, 2)
    with pytest.raises(WindowExhausted):
        delta_k(grid, 5)
    with pytest.raises(ValueError):
        delta_k(grid, -1)


@pytest.mark.parametrize(
    "convention, factor",
    [("power", 4.0), ("partial", -4.0), ("falling", 2.0)],
)
def test_second_derivative_of_a_mode(convention, factor):
    grid = sample_symbol(closed("exp(2*i*x)"), 16, 2)
    result = x_derivative(grid, 2, convention)
    assert_allclose(result.values, factor * grid.values, atol=1e-12)


def test_falling_derivative_annihilates_low_modes():
    grid = sample_symbol(closed("exp(i*x) + 3"), 16, 2)
    assert_allclose(x_derivative(grid, 2, "falling").values, 0.0, atol=1e-12)


def test_d_x_is_the_power_convention():
    grid = sample_symbol(closed("cos(3*x) * k"), 32, 4)
    expected = 3j * np.sin(3 * grid.x)[:, None] * grid.ks[None, :]
    assert_allclose(d_x(grid, 1).values, expected, atol=1e-10)


def test_derivatives_of_multipliers_vanish():
    grid = sample_symbol(multiplier("<k>"), 8, 4)
    assert not np.any(d_x(grid, 2).values)
    assert d_x(grid, 0) is grid


def test_mode_factors():
    assert_allclose(mode_factors(8, 1, "power"), [0, 1, 2, 3, -4, -3, -2, -1])
    with pytest.raises(ValueError):
        mode_factors(8, 1, "symmetric")


def test_inverse_factorial():
    assert inverse_factorial(0) == 1.0
    assert inverse_factorial(5) == pytest.approx(1 / 120)


def test_newton_parts_split_modes_by_sign():
    grid = sample_symbol(closed("exp(2*i*x) + exp(-i*x)"), 16, 2)
    x = grid.x[:, None].repeat(grid.nk, axis=1)

    ahead, behind = newton_parts(grid, 0)
    assert_array_equal(ahead, grid.values)
    assert not np.any(behind)

    ahead, behind = newton_parts(grid, 1)
    assert_allclose(ahead, 2 * np.exp(2j * x), atol=1e-12)
    assert_allclose(behind, -np.exp(-1j * x), atol=1e-12)

    ahead, behind = newton_parts(grid, 2)
    assert_allclose(ahead, 2 * np.exp(2j * x), atol=1e-12)
    assert_allclose(behind, 0.0, atol=1e-12)
    assert_allclose(np.array(newton_parts(grid, 3)), 0.0, atol=1e-12)


def test_newton_parts_of_multipliers_vanish():
    ahead, behind = newton_parts(sample_symbol(multiplier("<k>"), 8, 4), 1)
    assert not np.any(ahead) and not np.any(behind)
