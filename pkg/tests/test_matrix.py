import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import closed, multiplier, table_of
from toruspdo.helper.errors import WindowMismatch, WindowTooSmall
from toruspdo.matrix import (
    AssocMatrix,
    CoeffVector,
    adjoint,
    apply,
    build_assoc_matrix,
    effective_band,
    gram_block,
    matmul,
)
from toruspdo.symbol import FourierTable, bracket, fourier_table, sample_symbol


def test_shift_matrix(shift):
    matrix = build_assoc_matrix(table_of(shift, 4, Q=64, K=8), 4)
    assert matrix.band == 1 and matrix.trusted_radius == 4
    assert_allclose(matrix.entries, np.eye(9, k=-1), atol=1e-15)
    # round-off rows are dropped, not kept as tiny entries
    assert_array_equal(np.diagonal(matrix.entries), 0.0)
    assert matrix.entry(1, 0) == pytest.approx(1.0)


def test_multiplier_matrix_is_diagonal():
    sym = multiplier("<k>^(-1)", K=8)
    matrix = build_assoc_matrix(table_of(sym, 3), 5)
    assert matrix.band == 0
    assert_array_equal(matrix.entries, np.diag(np.diagonal(matrix.entries)))
    assert_allclose(matrix.diagonal(), 1.0 / bracket(np.arange(-5, 6)), rtol=1e-14)


def test_adjoint_of_shift(shift):
    matrix = build_assoc_matrix(table_of(shift, 2, Q=32, K=4), 3)
    assert_allclose(adjoint(matrix).entries, np.eye(7, k=1), atol=1e-15)


def test_product_trust_bookkeeping(shift):
    matrix = build_assoc_matrix(table_of(shift, 2, Q=32, K=6), 6)
    square = matmul(matrix, matrix)
    assert square.band == 2
    assert square.trusted_radius == 5
    assert square.entry(2, 0) == pytest.approx(1.0)


def test_trusted_radius_floor():
    A = AssocMatrix(1, np.ones((3, 3)), band=2, trusted_radius=1)
    product = matmul(matmul(A, A), A)
    assert product.trusted_radius == -1
    assert not product.has_trusted_region
    assert product.trusted_block().shape == (0, 0)


def test_matmul_window_mismatch():
    with pytest.raises(WindowMismatch):
        matmul(AssocMatrix(1, np.eye(3), 0, 1), AssocMatrix(2, np.eye(5), 0, 2))


def test_apply_moves_basis_vectors(shift):
    matrix = build_assoc_matrix(table_of(shift, 2, Q=32, K=4), 3)
    moved = apply(matrix, CoeffVector.basis(3, 1))
    assert moved.at(2) == pytest.approx(1.0)
    assert moved.norm() == pytest.approx(1.0)
    with pytest.raises(WindowMismatch):
        apply(matrix, CoeffVector.basis(2, 0))


def test_window_larger_than_table(shift):
    with pytest.raises(WindowTooSmall):
        build_assoc_matrix(table_of(shift, 2, Q=32, K=4), 5)


def test_effective_band_ignores_round_off():
    table = table_of(closed("2+exp(i*x)+exp(-3*i*x)/8"), 6, Q=64, K=4)
    assert effective_band(table) == 3
    assert effective_band(table, band_tol=0.2) == 1
    zero = FourierTable(np.zeros((5, 3)), 2, -1)
    assert effective_band(zero) == 0


def test_gram_block_of_multiplication_operator(multiplication):
    grid = sample_symbol(multiplication, 64, 8)
    block = gram_block(fourier_table(grid, 4), grid, 8)
    expected = 5.0 * np.eye(17) + 2.0 * (np.eye(17, k=1) + np.eye(17, k=-1))
    assert_allclose(block, expected, atol=1e-12)


def test_gram_block_needs_alias_free_grid(multiplication):
    grid = sample_symbol(multiplication, 16, 8)
    with pytest.raises(WindowTooSmall):
        gram_block(fourier_table(grid, 4), grid, 8)


def test_coeff_vector_validation():
    with pytest.raises(WindowMismatch):
        CoeffVector(2, np.zeros(4))
    vec = CoeffVector.basis(2, -2)
    assert_array_equal(vec.ks, [-2, -1, 0, 1, 2])
    assert vec.at(5) == 0j
