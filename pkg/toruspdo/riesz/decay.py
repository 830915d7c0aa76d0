"""
Decay of sup_x |sigma(x, k)| as |k| grows.

d_sigma is a limsup over |k| -> infinity, so on a finite window all we can
do is report the values near the edge, how they trend, and an extrapolated
limit over doubling windows.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from toruspdo.helper.errors import WindowTooSmall
from toruspdo.symbol.symbol import ToroidalGrid, sup_abs_per_k


class Trend(str, Enum):
    DECREASING = "DECREASING"
    FLAT = "FLAT"
    INCREASING = "INCREASING"
    OSCILLATING = "OSCILLATING"


@dataclass(frozen=True, eq=False)
class DecayProfile:
    """per_k[k + K] = sup_x |sigma(x, k)| for |k| <= K."""

    per_k: np.ndarray
    K: int
    W: int
    tail_estimate: float
    trend: Trend

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.K, self.K + 1)

    def to_dict(self) -> dict:
        return {"K": self.K, "W": self.W, "tail_estimate": self.tail_estimate, "trend": self.trend}


def _radial_sup(per_k: np.ndarray, K: int) -> np.ndarray:
    """s[k] = max(per_k(k), per_k(-k)) for k = 0..K."""
    return np.maximum(per_k[K:], per_k[K::-1])


def _trend(radial: np.ndarray, K: int, flat_tol: float) -> Trend:
    lo, mid = K // 2, (3 * K) // 4
    inner = radial[lo:mid]
    outer = radial[mid:K + 1]
    m1, m2 = float(inner.max()), float(outer.max())
    scale = max(m1, m2)
    if abs(m2 - m1) <= flat_tol * scale:
        return Trend.FLAT
    if m2 < m1:
        return Trend.DECREASING
    band = radial[lo:K + 1]
    if np.all(np.diff(band) >= -flat_tol * scale):
        return Trend.INCREASING
    return Trend.OSCILLATING


def decay_profile(grid: ToroidalGrid, W: int = 0, flat_tol: float = 1e-9) -> DecayProfile:
    """
    sup_x |sigma(x, k)| on |k| <= K with its tail and trend.

    tail_estimate is the maximum over the outer band |k| in [K - W, K]
    (W = 0 keeps only k = +-K). The trend compares the maxima of the two
    halves of the fixed band |k| in [K/2, K]: FLAT when they agree to
    flat_tol, DECREASING when the outer half is smaller, INCREASING when it
    is larger and the band never drops, OSCILLATING otherwise.

    Args:
        grid: Sampled symbol; only its symmetric part |k| <= grid.K is used
        W: Tail band width, 0 <= W < K
        flat_tol: Relative tolerance of the FLAT test

    Raises:
        WindowTooSmall: if W >= K or K < 4
    """
    K = grid.K
    if K < 4:
        raise WindowTooSmall(f"decay profile needs K >= 4, got K={K}")
    if not 0 <= W < K:
        raise WindowTooSmall(f"tail band W={W} must satisfy 0 <= W < K={K}")
    per_k = sup_abs_per_k(grid.restrict(-K, K))
    radial = _radial_sup(per_k, K)
    tail = float(radial[K - W:K + 1].max())
    return DecayProfile(per_k=per_k, K=K, W=W, tail_estimate=tail, trend=_trend(radial, K, flat_tol))


def limit_extrapolate(values, power_ratio: float = 0.1):
    """
    Extrapolate the limit of a sequence sampled on doubling windows (v1, v2, v3).

    Moduli that shrink by at least 2^power_ratio per doubling are read as a
    power-law decay and extrapolate to 0; otherwise Aitken's delta-squared
    step is used (the last value when the second difference vanishes).
    Works for real and complex sequences.
    """
    if len(values) != 3:
        raise ValueError(f"limit_extrapolate needs three values, got {len(values)}")
    v1, v2, v3 = values
    a1, a2, a3 = abs(v1), abs(v2), abs(v3)
    if a3 == 0.0:
        return 0.0 * v3
    if a1 > 0.0 and a2 > 0.0 and np.log2(a1 / a2) >= power_ratio and np.log2(a2 / a3) >= power_ratio:
        return 0.0 * v3
    d1, d2 = v2 - v1, v3 - v2
    denom = d2 - d1
    if abs(denom) <= 1e-15 * max(a1, a2, a3):
        return v3
    return v3 - d2 * d2 / denom
