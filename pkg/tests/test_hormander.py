import pytest

from conftest import closed, multiplier
from toruspdo.helper.errors import WindowExhausted
from toruspdo.symbol import Symbol, hormander_estimate, sample_symbol


def test_order_minus_one_multiplier_is_bounded():
    sym = multiplier("<k>^(-1)", K=16, Q=16)
    report = hormander_estimate(sym, m=-1.0, max_t=1, max_r=0, growth_tol=0.05)
    assert report.windows == (16, 32, 64)
    assert report.seminorms[(0, 0)] == pytest.approx(1.0)
    # sup of |Delta <k>^-1| <k>^2 sits at k = -3: (<2>^-1 - <3>^-1) * 10
    assert report.seminorms[(1, 0)] == pytest.approx((5 ** -0.5 - 10 ** -0.5) * 10, rel=1e-12)
    assert report.seminorms[(1, 0)] <= 1.5
    assert report.growth[(1, 0)] == pytest.approx((report.seminorms[(1, 0)],) * 3, rel=1e-12)
    assert not report.non_membership


def test_underestimated_order_is_flagged():
    sym = multiplier("k^2", K=8, Q=16)
    report = hormander_estimate(sym, m=1.0, max_t=1, max_r=0)
    assert (0, 0) in report.unbounded
    assert report.non_membership


def test_unbounded_symbol_is_not_of_order_zero():
    report = hormander_estimate(multiplier("k", K=8, Q=16), m=0.0, max_t=1, max_r=0)
    assert report.growth[(0, 0)] == (8.0, 16.0, 32.0)
    assert (0, 0) in report.unbounded
    assert report.non_membership
    assert report.to_dict()["non_membership"] is True


def test_x_derivatives_of_trigonometric_symbol():
    sym = closed("exp(2*i*x)", K=8, Q=32)
    report = hormander_estimate(sym, m=0.0, max_t=1, max_r=2, doublings=0)
    assert report.seminorms[(0, 2)] == pytest.approx(4.0)
    assert report.seminorms[(1, 0)] == 0.0


def test_sampled_symbol_uses_stored_window():
    frozen = Symbol.sampled(sample_symbol(closed("cos(x)"), 16, 4))
    report = hormander_estimate(frozen, m=0.0)
    assert report.windows == (4,)
    assert report.to_dict()["non_membership"] is False


def test_invalid_parameters():
    sym = multiplier("1", K=2, Q=4)
    with pytest.raises(ValueError):
        hormander_estimate(sym, m=0.0, rho=1.5)
    with pytest.raises(WindowExhausted):
        hormander_estimate(sym, m=0.0, max_t=5, doublings=0)
