"""Mikhlin-type condition |Delta^t sigma(k)| <= C <k>^-t, t in {0, 1}, for Fourier multipliers."""
from dataclasses import dataclass

import numpy as np

from toruspdo.helper.errors import WindowTooLarge
from toruspdo.symbol.symbol import Symbol, SymbolKind, bracket


@dataclass(frozen=True)
class MikhlinResult:
    passed: bool
    C_estimate: float
    C_doubled: float
    K: int

    def to_dict(self) -> dict:
        return {"passed": self.passed, "C": self.C_estimate, "C_doubled": self.C_doubled, "K": self.K}


def multiplier_values(sym: Symbol, K: int) -> np.ndarray:
    """sigma(k) for k in [-K, K]."""
    if not sym.is_multiplier:
        raise ValueError(f"symbol {sym.name!r} depends on x; a Fourier multiplier is required")
    if sym.kind is SymbolKind.SAMPLED:
        if sym.grid.K < K:
            raise WindowTooLarge(f"sampled multiplier {sym.name!r} covers |k| <= {sym.grid.K}, requested {K}")
        return sym.grid.restrict(-K, K).values[0].copy()
    ks = np.arange(-K, K + 1, dtype=float)
    return np.broadcast_to(np.asarray(sym.evaluator(ks), dtype=complex), ks.shape).copy()


def mikhlin_constant(values: np.ndarray, K: int) -> float:
    """max over t in {0, 1} and |k| <= K - 1 of |Delta^t sigma(k)| <k>^t."""
    ks = np.arange(-K, K)
    zeroth = np.abs(values[:-1])
    first = np.abs(np.diff(values)) * bracket(ks)
    return float(max(zeroth.max(), first.max()))


def mikhlin_check(sym: Symbol, K: int = None, growth_tol: float = 0.05) -> MikhlinResult:
    """
    Estimate the Mikhlin constant on |k| <= K and again on |k| <= 2K.

    passed when the constant grows by less than growth_tol under the
    doubling. Sampled multipliers are checked on half their stored window.
    """
    if K is None:
        K = sym.k_window
    if sym.kind is SymbolKind.SAMPLED:
        K = min(K, sym.grid.K // 2)
    if K < 1:
        raise WindowTooLarge(f"multiplier {sym.name!r} has no room for a doubling window")
    values = multiplier_values(sym, 2 * K)
    c_small = mikhlin_constant(values[K:3 * K + 1], K)
    c_large = mikhlin_constant(values, 2 * K)
    passed = c_large <= (1.0 + growth_tol) * c_small
    return MikhlinResult(passed=bool(passed), C_estimate=c_small, C_doubled=c_large, K=K)
