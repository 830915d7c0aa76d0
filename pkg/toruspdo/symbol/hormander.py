"""
Finite-sample estimates of the periodic Hormander seminorms

    C_{t,r} = sup_{x,k} |Delta_k^t D_x^r sigma(x,k)| / <k>^{m - rho t + delta r}

Membership in S^m_{rho,delta} is only finitely checkable, so the report
carries the estimates on doubling windows and flags seminorms that keep
growing.
"""
from dataclasses import dataclass, field

import numpy as np

from toruspdo.helper.console import log
from toruspdo.helper.errors import WindowExhausted
from toruspdo.symbol.difference import d_x, delta_k
from toruspdo.symbol.symbol import Symbol, SymbolKind, bracket, sample_symbol


@dataclass(frozen=True)
class HormanderReport:
    order_m: float
    rho: float
    delta: float
    max_t: int
    max_r: int
    seminorms: dict
    windows: tuple[int, ...]
    growth: dict = field(default_factory=dict)
    unbounded: tuple[tuple[int, int], ...] = ()

    @property
    def non_membership(self) -> bool:
        """True when some seminorm grew across two successive window doublings."""
        return len(self.unbounded) > 0

    def to_dict(self) -> dict:
        return {
            "order_m": self.order_m,
            "rho": self.rho,
            "delta": self.delta,
            "max_t": self.max_t,
            "max_r": self.max_r,
            "windows": list(self.windows),
            "seminorms": {f"{t},{r}": value for (t, r), value in sorted(self.seminorms.items())},
            "growth": {f"{t},{r}": list(values) for (t, r), values in sorted(self.growth.items())},
            "unbounded": [list(key) for key in self.unbounded],
            "non_membership": self.non_membership,
        }


def _seminorms_on_window(sym: Symbol, K: int, m: float, rho: float, delta: float,
                         max_t: int, max_r: int) -> dict:
    if max_t >= 2 * K + 1:
        raise WindowExhausted(f"max_t={max_t} exhausts the window |k| <= {K}")
    grid = sample_symbol(sym, sym.x_resolution, K)
    # FFT round-off below this level is reported as an exact zero.
    floor = 1e-11 * max(1.0, float(np.abs(grid.values).max()))
    estimates = {}
    for r in range(max_r + 1):
        derived = d_x(grid, r)
        for t in range(max_t + 1):
            differenced = delta_k(derived, t)
            if np.abs(differenced.values).max() <= floor:
                estimates[(t, r)] = 0.0
                continue
            weight = bracket(differenced.ks) ** (m - rho * t + delta * r)
            estimates[(t, r)] = float((np.abs(differenced.values) / weight).max())
    return estimates


def hormander_estimate(
    sym: Symbol,
    m: float,
    rho: float = 1.0,
    delta: float = 0.0,
    max_t: int = 2,
    max_r: int = 2,
    doublings: int = 2,
    growth_tol: float = 1e-2,
) -> HormanderReport:
    """
    Estimate C_{t,r} for 0 <= t <= max_t, 0 <= r <= max_r.

    Closed-form and multiplier symbols are evaluated on K, 2K, ..., 2^doublings K
    (K = sym.k_window); sampled symbols only on their stored window. A seminorm
    is flagged unbounded when it grows by more than growth_tol (relative) on
    each of the last two doublings.

    Args:
        sym: Symbol to test
        m, rho, delta: Order and type of the class S^m_{rho,delta}
        max_t, max_r: Largest difference / derivative orders
        doublings: Number of window doublings
        growth_tol: Relative growth counted as "still growing"

    Returns:
        HormanderReport with the seminorms of the largest window

    Raises:
        WindowExhausted: if max_t leaves no k values
    """
    if not (0.0 <= rho <= 1.0 and 0.0 <= delta <= 1.0):
        raise ValueError(f"rho={rho} and delta={delta} must lie in [0, 1]")
    if max_t < 0 or max_r < 0:
        raise ValueError("max_t and max_r must be >= 0")

    K = sym.k_window
    if sym.kind is SymbolKind.SAMPLED:
        windows = (K,)
    else:
        windows = tuple(K * 2 ** j for j in range(doublings + 1))

    per_window = [_seminorms_on_window(sym, w, m, rho, delta, max_t, max_r) for w in windows]
    keys = sorted(per_window[-1])
    growth = {key: tuple(est[key] for est in per_window) for key in keys}

    unbounded = []
    if len(windows) >= 3:
        for key, values in growth.items():
            a, b, c = values[-3:]
            if b > a * (1.0 + growth_tol) and c > b * (1.0 + growth_tol):
                unbounded.append(key)
    if unbounded:
        log("SYMBOL", f"{sym.name}: seminorms {unbounded} keep growing over windows {windows}")

    return HormanderReport(
        order_m=m,
        rho=rho,
        delta=delta,
        max_t=max_t,
        max_r=max_r,
        seminorms=dict(per_window[-1]),
        windows=windows,
        growth=growth,
        unbounded=tuple(unbounded),
    )
