import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import closed, multiplier
from toruspdo.helper.errors import NonFiniteSample, ParseError, WindowTooLarge
from toruspdo.matrix import CoeffVector
from toruspdo.operator import (
    PeriodicFunction,
    apply_operator,
    forward_coeffs,
    matrix_consistency_residual,
    read_function_csv,
    write_function_csv,
)
from toruspdo.symbol import FourierTable, Symbol, grid_from_table


def random_symbol(rng, M=4, K=16, Q=1024) -> Symbol:
    shape = (2 * M + 1, 2 * K + 1)
    table = FourierTable(rng.standard_normal(shape) + 1j * rng.standard_normal(shape), M, -K)
    return Symbol.sampled(grid_from_table(table, Q), name="random")


def random_function(rng, n=16, Q=1024) -> PeriodicFunction:
    values = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
    return PeriodicFunction.from_coeffs(CoeffVector(n, values), Q)


def test_operator_agrees_with_its_matrix(rng):
    for _ in range(20):
        sym = random_symbol(rng, M=int(rng.integers(0, 5)))
        f = random_function(rng)
        assert matrix_consistency_residual(sym, f, 16, M=8) < 1e-8


def test_identity_reproduces_the_function():
    f = PeriodicFunction.from_expression("cos(x)", 64)
    result = apply_operator(closed("1", K=16, Q=64), f, 8)
    assert not result.truncated
    assert_allclose(result.samples, np.cos(f.x), atol=1e-13)


def test_multiplication_is_pointwise():
    f = PeriodicFunction.from_expression("sin(2*x) + 3*exp(-i*x)", 128)
    result = apply_operator(closed("2+exp(i*x)", K=16, Q=128), f, 4)
    assert_allclose(result.samples, (2 + np.exp(1j * f.x)) * f.samples, atol=1e-12)


def test_multiplier_scales_each_mode():
    f = PeriodicFunction.from_expression("cos(3*x)", 64)
    result = apply_operator(multiplier("<k>^(-1)", K=16, Q=64), f, 8)
    assert_allclose(result.samples, np.cos(3 * f.x) / np.sqrt(10.0), atol=1e-13)


def test_modes_beyond_the_window_are_dropped():
    f = PeriodicFunction.from_expression("cos(5*x)", 64)
    result = apply_operator(closed("1", K=16, Q=64), f, 2)
    assert result.truncated
    assert_allclose(result.samples, 0.0, atol=1e-13)


def test_forward_coeffs_of_trigonometric_polynomial():
    values = np.array([0.5j, 0.0, 2.0, 1.0, 0.0])
    f = PeriodicFunction.from_coeffs(CoeffVector(2, values), 16)
    assert_allclose(forward_coeffs(f, 2).values, values, atol=1e-14)
    assert f.norm() == pytest.approx(np.sqrt(0.25 + 4.0 + 1.0))


def test_window_limits():
    f = PeriodicFunction(np.ones(8))
    with pytest.raises(WindowTooLarge):
        forward_coeffs(f, 4)
    with pytest.raises(WindowTooLarge):
        apply_operator(closed("1"), PeriodicFunction(np.ones(6)), 1)
    with pytest.raises(WindowTooLarge):
        matrix_consistency_residual(closed("1", Q=8), f, 2, M=2)


def test_non_finite_samples_are_rejected():
    with pytest.raises(NonFiniteSample):
        PeriodicFunction(np.array([1.0, np.nan, 0.0, 0.0]))


def test_function_csv_round_trip(tmp_path, rng):
    f = random_function(rng, n=4, Q=32)
    path = tmp_path / "f.csv"
    text = write_function_csv(f, str(path))
    assert text.splitlines()[0] == "q,re,im"
    assert np.array_equal(read_function_csv(str(path)).samples, f.samples)


def test_function_csv_must_be_ordered(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("q,re,im\n1,0.0,0.0\n0,1.0,0.0\n")
    with pytest.raises(ParseError):
        read_function_csv(str(path))
    path.write_text("q,re\n0,1.0\n")
    with pytest.raises(ParseError):
        read_function_csv(str(path))
