import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from conftest import multiplier, table_of
from toruspdo.helper.errors import DenseLimitExceeded, MikhlinFailed
from toruspdo.matrix import AssocMatrix, build_assoc_matrix
from toruspdo.spectral import eigensolve_truncated, multiplier_spectrum, sort_eigenvalues
from toruspdo.symbol import bracket


def test_multiplier_truncation_eigenvalues_are_exact(inverse_bracket):
    matrix = build_assoc_matrix(table_of(inverse_bracket, 4, Q=256, K=64), 64)
    values = eigensolve_truncated(matrix)
    assert_allclose(values, sort_eigenvalues(1.0 / bracket(np.arange(-64, 65))), rtol=1e-14)


def test_multiplier_spectrum_adds_accumulation_point(inverse_bracket):
    spectrum = multiplier_spectrum(inverse_bracket, K=64)
    assert spectrum.accumulation_points == (0j,)
    assert spectrum.status == "CLOSURE-ESTIMATED"
    assert spectrum.mikhlin.passed
    assert spectrum.mikhlin.C_estimate == pytest.approx(spectrum.mikhlin.C_doubled)
    assert 0j in spectrum.points()


def test_constant_multiplier_spectrum_is_sampled_exactly():
    spectrum = multiplier_spectrum(multiplier("1"), K=16)
    assert spectrum.accumulation_points == ()
    assert spectrum.status == "EXACT-SAMPLED"
    assert_array_equal(spectrum.points(), [1.0])


def test_growing_multiplier_fails_mikhlin():
    with pytest.raises(MikhlinFailed):
        multiplier_spectrum(multiplier("k^2"), K=8)


def test_alternating_multiplier_fails_mikhlin():
    with pytest.raises(MikhlinFailed):
        multiplier_spectrum(multiplier("(-1)^k"), K=32)


def test_triangular_truncation_returns_diagonal(shift):
    matrix = build_assoc_matrix(table_of(shift, 4, Q=64, K=16), 16)
    assert_array_equal(eigensolve_truncated(matrix), np.zeros(33))


def test_dense_path_matches_numpy(rng):
    entries = rng.standard_normal((9, 9)) + 1j * rng.standard_normal((9, 9))
    values = eigensolve_truncated(AssocMatrix(4, entries, 8, 4))
    assert_allclose(values, sort_eigenvalues(np.linalg.eigvals(entries)), atol=1e-10)


def test_dense_limit():
    with pytest.raises(DenseLimitExceeded):
        eigensolve_truncated(AssocMatrix(4, np.eye(9), 0, 4), dense_limit=5)


def test_sort_order():
    assert_array_equal(sort_eigenvalues([1 + 1j, 0 + 2j, 1 - 1j]), [0 + 2j, 1 - 1j, 1 + 1j])
