import numpy as np
import pytest

from conftest import closed, multiplier, table_of
from toruspdo.helper.errors import InsufficientDecay, WindowTooSmall
from toruspdo.matrix import build_assoc_matrix
from toruspdo.spectral import (
    DiscreteSpectrumVerdict,
    InvertibilityVerdict,
    ResolventVerdict,
    discrete_spectrum_conditions,
    eigensolve_truncated,
    invertibility_test,
    resolvent_test,
)
from toruspdo.symbol import sample_symbol


@pytest.fixture
def example_table(square_plus_shift):
    return table_of(square_plus_shift, 8, Q=256, K=64)


def test_half_lies_in_the_resolvent_set(example_table):
    result = resolvent_test(example_table, 0.5, 16)
    assert result.verdict is ResolventVerdict.IN_RESOLVENT
    assert result.inf_distance == pytest.approx(0.5)
    assert result.sup_ratio == pytest.approx(0.5)
    assert result.exclusion_radius == pytest.approx(0.25)
    assert result.details.compact_inverse
    assert not result.details.discrepancies

    eigenvalues = eigensolve_truncated(build_assoc_matrix(example_table, 16))
    assert np.abs(eigenvalues - 0.5).min() >= 0.25


def test_zero_center_fails_condition_one(example_table):
    result = invertibility_test(example_table, None, 16)
    assert result.verdict is InvertibilityVerdict.FAILS
    assert "i" in result.failed
    assert result.conditions["ii"] is False


def test_multiplication_operator_is_invertible(multiplication):
    grid = sample_symbol(multiplication, 256, 64)
    result = invertibility_test(table_of(multiplication, 8, Q=256, K=64), grid, 16)
    assert result.verdict is InvertibilityVerdict.INVERTIBLE
    assert result.inf_center == pytest.approx(2.0)
    assert result.sup_ratio_col == pytest.approx(0.5)
    assert result.sup_ratio_row == pytest.approx(0.5)
    assert result.primed["ii_prime"] and result.primed["iii_prime"]
    assert not result.compact_inverse


def test_shift_is_not_certified(shift):
    result = invertibility_test(table_of(shift, 4, Q=64, K=32), None, 16)
    assert result.verdict is InvertibilityVerdict.FAILS
    assert result.to_dict()["verdict"] is InvertibilityVerdict.FAILS


def test_resolvent_inside_a_disc_is_undecided(example_table):
    result = resolvent_test(example_table, 4.1, 16)
    assert result.verdict is ResolventVerdict.UNDECIDED
    assert result.exclusion_radius == 0.0


def test_insufficient_decay():
    table = table_of(closed("2 + exp(3*i*x)"), 3, Q=64, K=32)
    with pytest.raises(InsufficientDecay):
        invertibility_test(table, None, 16)


def test_region_too_small(multiplication):
    with pytest.raises(WindowTooSmall):
        invertibility_test(table_of(multiplication, 6, Q=64, K=8), None, 8)


def test_discrete_spectrum_conditions(example_table, multiplication):
    holds = discrete_spectrum_conditions(example_table, 16)
    assert holds["verdict"] is DiscreteSpectrumVerdict.HOLDS
    assert holds["centers_growing"]

    flat = discrete_spectrum_conditions(table_of(multiplication, 8, Q=256, K=64), 16)
    assert flat["verdict"] is DiscreteSpectrumVerdict.UNDECIDED


def test_bracket_multiplier_has_compact_inverse():
    result = invertibility_test(table_of(multiplier("<k>", K=64), 4, Q=64, K=64), None, 16)
    assert result.verdict is InvertibilityVerdict.INVERTIBLE
    assert result.inf_center == pytest.approx(1.0)
    assert result.sup_ratio < 1e-12
    assert result.compact_inverse


def test_shifted_square_plus_potential_is_invertible():
    sym = closed("k^2 + 1 + exp(i*x)/4", K=64)
    result = invertibility_test(table_of(sym, 8, Q=256, K=64), sample_symbol(sym, 256, 64), 16)
    assert result.verdict is InvertibilityVerdict.INVERTIBLE
    assert result.inf_center == pytest.approx(1.0)
    assert result.sup_ratio == pytest.approx(0.25, abs=1e-12)
    assert result.compact_inverse
    assert not result.discrepancies


def test_resolvent_of_inverse_bracket(inverse_bracket):
    table = table_of(inverse_bracket, 4, Q=64, K=64)
    outside = resolvent_test(table, 2.0, 16)
    assert outside.verdict is ResolventVerdict.IN_RESOLVENT
    assert outside.inf_distance == pytest.approx(1.0)
    assert outside.exclusion_radius == pytest.approx(1.0, abs=1e-12)

    # sigma(0) = 1, so lambda = 1 is an eigenvalue
    on_spectrum = resolvent_test(table, 1.0, 16)
    assert on_spectrum.verdict is ResolventVerdict.UNDECIDED
    assert "i" in on_spectrum.details.failed
