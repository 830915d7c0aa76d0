"""
Asymptotic symbol calculus.

    composition:  sigma_{AB}(x,k) ~ sum_{h<N} (1/h!) Delta_k^h alpha(x,k) D_x^h beta(x,k)
    adjoint:      sigma*(x,k)     ~ sum_{h<N} (1/h!) Delta_k^h d_x^h conj(sigma(x,k))

The x-derivative convention is selectable (see symbol.difference.mode_factors):
"power" is D_x^h, "partial" is (d/dx)^h and "falling" is the falling
factorial D_x (D_x - 1) ... (D_x - h + 1), under which composing with a
trigonometric polynomial of nonnegative x-modes terminates exactly. The
adjoint also accepts "newton", which differences negative x-modes backwards
so that its series terminates for every trigonometric polynomial.

Every term shrinks the k window on the right by its difference order (under
"newton" also on the left). The result is cut to the window on which the N-th
term (the remainder proxy) is defined.
"""
from dataclasses import dataclass
from typing import Optional

import numpy as np

from toruspdo.helper.console import log
from toruspdo.helper.errors import ExpansionOrderError, WindowExhausted
from toruspdo.symbol.difference import DERIVATIVE_CONVENTIONS, delta_k, inverse_factorial, newton_parts, x_derivative
from toruspdo.symbol.symbol import Symbol, ToroidalGrid, sample_symbol

MAX_ORDER = 20
ADJOINT_CONVENTIONS = DERIVATIVE_CONVENTIONS + ("newton",)


@dataclass(frozen=True, eq=False)
class ExpansionResult:
    symbol_grid: ToroidalGrid
    order_N: int
    remainder_proxy: float
    convention: str = "power"
    term_sups: tuple[float, ...] = ()
    proxy_decreasing: bool = True
    leading_grid: Optional[ToroidalGrid] = None
    correction_sup: Optional[float] = None
    uniform_bound: Optional[float] = None

    def to_dict(self) -> dict:
        out = {
            "order_N": self.order_N,
            "convention": self.convention,
            "k_window": [self.symbol_grid.k_start, self.symbol_grid.k_stop],
            "remainder_proxy": self.remainder_proxy,
            "proxy_decreasing": self.proxy_decreasing,
            "term_sups": list(self.term_sups),
        }
        if self.correction_sup is not None:
            out["correction_sup"] = self.correction_sup
        if self.uniform_bound is not None:
            out["uniform_bound"] = self.uniform_bound
        return out


def check_order(N: int) -> None:
    if not 1 <= N <= MAX_ORDER:
        raise ExpansionOrderError(f"expansion order N={N} must lie in [1, {MAX_ORDER}]")


def _common_window(*grids: ToroidalGrid) -> tuple[int, int]:
    start = max(g.k_start for g in grids)
    stop = min(g.k_stop for g in grids)
    if stop < start:
        raise WindowExhausted("grids share no k values")
    return start, stop


def _expand(ga: ToroidalGrid, gb: ToroidalGrid, N: int, convention: str) -> ExpansionResult:
    """sum_{h<N} (1/h!) Delta^h ga * X^h gb with X the chosen x-derivative, plus the N-th term."""
    if ga.Q != gb.Q:
        raise ValueError(f"grids differ in Q: {ga.Q} vs {gb.Q}")
    start, stop = _common_window(ga, gb)
    out_stop = stop - N
    if out_stop < start:
        raise WindowExhausted(f"order N={N} exhausts the k window [{start}, {stop}]")
    ga = ga.restrict(start, stop)
    gb = gb.restrict(start, stop)
    width = out_stop - start + 1

    total = np.zeros((ga.Q, width), dtype=complex)
    sups = []
    for h in range(N + 1):
        diff = delta_k(ga, h).values[:, :width]
        deriv = x_derivative(gb, h, convention).values[:, :width]
        term = inverse_factorial(h) * diff * deriv
        sups.append(float(np.abs(term).max()))
        if h < N:
            total += term

    proxy = sups[N]
    decreasing = proxy <= sups[N - 1] or proxy == 0.0
    multiplier = ga.multiplier and gb.multiplier
    return ExpansionResult(
        symbol_grid=ToroidalGrid(total, start, multiplier),
        order_N=N,
        remainder_proxy=proxy,
        convention=convention,
        term_sups=tuple(sups),
        proxy_decreasing=decreasing,
    )


def _grid_of(sym: Symbol, Q: Optional[int], K: Optional[int]) -> ToroidalGrid:
    return sample_symbol(sym, sym.x_resolution if Q is None else Q, sym.k_window if K is None else K)


def compose_grids(ga: ToroidalGrid, gb: ToroidalGrid, N: int, convention: str = "power") -> ExpansionResult:
    """Composition expansion on already sampled grids (windows may be asymmetric)."""
    check_order(N)
    result = _expand(ga, gb, N, convention)
    if not result.proxy_decreasing:
        log("CALCULUS", f"remainder proxy grew from term {N - 1} to term {N} "
                        f"({result.term_sups[N - 1]:.3e} -> {result.remainder_proxy:.3e})")
    return result


def compose_asymptotic(
    alpha: Symbol,
    beta: Symbol,
    N: int = 4,
    Q: Optional[int] = None,
    K: Optional[int] = None,
    convention: str = "power",
) -> ExpansionResult:
    """
    Symbol of T_alpha T_beta truncated after N terms.

    Args:
        alpha, beta: Symbols sampled on the shared (Q, K) grid
        N: Expansion order, 1 <= N <= 20
        Q, K: Shared grid (defaults: alpha's resolution and window)
        convention: "power", "partial" or "falling"

    Returns:
        ExpansionResult on k in [-K, K - N]

    Raises:
        ExpansionOrderError: if N is out of range
        WindowExhausted: if N leaves no k values
    """
    check_order(N)
    Q = alpha.x_resolution if Q is None else Q
    K = alpha.k_window if K is None else K
    return compose_grids(_grid_of(alpha, Q, K), _grid_of(beta, Q, K), N, convention)


def adjoint_asymptotic(
    sigma: Symbol,
    N: int = 4,
    Q: Optional[int] = None,
    K: Optional[int] = None,
    convention: str = "partial",
) -> ExpansionResult:
    """
    Symbol of the adjoint T_sigma^* truncated after N terms.

    The default "partial" convention uses d/dx = i D_x as the formula is
    usually written; its first-order term differs from the exact adjoint
    (with "falling" the truncated sums converge to it).
    """
    check_order(N)
    grid = _grid_of(sigma, Q, K)
    conj = grid.with_values(grid.values.conj())
    start, stop = conj.k_start, conj.k_stop
    out_stop = stop - N
    if out_stop < start:
        raise WindowExhausted(f"order N={N} exhausts the k window [{start}, {stop}]")
    width = out_stop - start + 1

    total = np.zeros((conj.Q, width), dtype=complex)
    sups = []
    for h in range(N + 1):
        term = inverse_factorial(h) * delta_k(x_derivative(conj, h, convention), h).values[:, :width]
        sups.append(float(np.abs(term).max()))
        if h < N:
            total += term
    proxy = sups[N]
    decreasing = proxy <= sups[N - 1] or proxy == 0.0
    if not decreasing:
        log("CALCULUS", f"adjoint remainder proxy grew ({sups[N - 1]:.3e} -> {proxy:.3e})")
    return ExpansionResult(
        symbol_grid=ToroidalGrid(total, start, grid.multiplier),
        order_N=N,
        remainder_proxy=proxy,
        convention=convention,
        term_sups=tuple(sups),
        proxy_decreasing=decreasing,
    )


def symbol_power(
    sigma: Symbol,
    n: int,
    N: int = 4,
    Q: Optional[int] = None,
    K: Optional[int] = None,
    convention: str = "power",
) -> ExpansionResult:
    """
    Symbol of T_sigma^n by iterating sigma o sigma^(n-1).

    Alongside the expansion, reports the leading term sigma^n (pointwise
    power), the sup of the correction (expansion minus leading term) and
    the uniform bound C_sigma = max |sigma| over the grid.

    Raises:
        ValueError: if n < 1
        WindowExhausted: if the n - 1 compositions use up the k window
    """
    if n < 1:
        raise ValueError(f"power n={n} must be >= 1")
    check_order(N)
    base = _grid_of(sigma, Q, K)
    bound = float(np.abs(base.values).max())

    if n == 1:
        return ExpansionResult(base, N, 0.0, convention, (), True, base, 0.0, bound)

    current = base
    proxy = 0.0
    decreasing = True
    sups: tuple[float, ...] = ()
    for _ in range(n - 1):
        step = compose_grids(base, current, N, convention)
        current = step.symbol_grid
        proxy = max(proxy, step.remainder_proxy)
        decreasing = decreasing and step.proxy_decreasing
        sups = step.term_sups

    window = base.restrict(current.k_start, current.k_stop)
    leading = window.with_values(window.values ** n)
    correction = float(np.abs(current.values - leading.values).max())
    return ExpansionResult(
        symbol_grid=current,
        order_N=N,
        remainder_proxy=proxy,
        convention=convention,
        term_sups=sups,
        proxy_decreasing=decreasing,
        leading_grid=leading,
        correction_sup=correction,
        uniform_bound=bound,
    )
