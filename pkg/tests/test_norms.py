import numpy as np
import pytest

from conftest import multiplier, table_of
from toruspdo.helper.errors import NonHermitianBlock, TrustedRegionEmpty
from toruspdo.matrix import build_assoc_matrix
from toruspdo.spectral import (
    NormMethod,
    crone_norm_diagonal,
    crone_norm_truncation,
    gram_sweep,
    schur_bound,
)
from toruspdo.symbol import fourier_table, sample_symbol


def test_schur_bound_of_multiplication_operator(multiplication):
    matrix = build_assoc_matrix(table_of(multiplication, 4, Q=256, K=32), 16)
    bound = schur_bound(matrix)
    assert bound * bound == pytest.approx(9.0, abs=1e-12)


def test_truncation_norm_of_multiplication_operator(multiplication):
    grid = sample_symbol(multiplication, 256, 64)
    table = fourier_table(grid, 4)
    estimate = crone_norm_truncation(gram_sweep(table, grid, [32, 64]), tol_rel=1e-3, upper=9.0)
    assert estimate.method is NormMethod.CRONE_TRUNCATION
    # largest eigenvalue of the tridiagonal Toeplitz block (5; 2): 5 + 4 cos(pi / (2n + 2))
    assert estimate.per_n[0][1] == pytest.approx(5 + 4 * np.cos(np.pi / 66), abs=1e-10)
    assert estimate.per_n[1][1] == pytest.approx(5 + 4 * np.cos(np.pi / 130), abs=1e-10)
    assert 8.5 <= estimate.estimate <= 9.0
    assert estimate.converged


def test_diagonal_norm_and_sandwich(multiplication):
    grid = sample_symbol(multiplication, 512, 128)
    table = fourier_table(grid, 4)
    matrix = build_assoc_matrix(table, 128)
    diagonal = crone_norm_diagonal(matrix, max_power=64)
    assert diagonal.method is NormMethod.CRONE_DIAGONAL
    assert diagonal.upper == pytest.approx(9.0, abs=1e-12)
    assert 8.5 <= diagonal.lower <= 9.0
    # the p-th value is (integral of |phi|^(2p))^(1/p), increasing in p
    values = [v for _, v in diagonal.per_n]
    assert values[0] == pytest.approx(5.0, abs=1e-10)
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))

    truncation = crone_norm_truncation(gram_sweep(table, grid, [64]), upper=9.0)
    assert diagonal.lower <= truncation.estimate <= 9.0


def test_diagonal_norm_needs_room(multiplication):
    matrix = build_assoc_matrix(table_of(multiplication, 4, Q=64, K=8), 4)
    with pytest.raises(TrustedRegionEmpty):
        crone_norm_diagonal(matrix, max_power=16)


def test_diagonal_norm_of_zero_operator():
    matrix = build_assoc_matrix(table_of(multiplier("0"), 0, Q=4, K=4), 4)
    estimate = crone_norm_diagonal(matrix, max_power=3)
    assert estimate.lower == 0.0 and estimate.converged
    assert estimate.per_n == ((1, 0.0), (2, 0.0), (3, 0.0))


def test_diagonal_norm_of_inverse_bracket_is_one(inverse_bracket):
    matrix = build_assoc_matrix(table_of(inverse_bracket, 0, Q=4, K=32), 16)
    estimate = crone_norm_diagonal(matrix, max_power=8)
    assert [p for p, _ in estimate.per_n] == list(range(1, 9))
    assert [v for _, v in estimate.per_n] == pytest.approx([1.0] * 8, abs=1e-14)
    assert estimate.upper == pytest.approx(1.0)


def test_non_hermitian_block_is_rejected():
    block = np.array([[1.0, 2.0], [0.0, 1.0]])
    with pytest.raises(NonHermitianBlock):
        crone_norm_truncation([(1, block)])


def test_single_block_has_no_convergence_verdict():
    estimate = crone_norm_truncation([(1, np.eye(3))])
    assert estimate.converged is None
    assert estimate.estimate == pytest.approx(1.0)
    assert estimate.to_dict()["per_n"] == [[1, pytest.approx(1.0)]]
