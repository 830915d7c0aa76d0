"""
Applying T_sigma to sampled periodic functions.

    (T_sigma f)(x) = sum_k sigma(x, k) f_hat(k) e^{ixk}

The sum runs over |k| <= n; inputs with energy beyond n are truncated and
the truncation is recorded on the result.
"""
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import pandas as pd
import scipy.fft

from toruspdo.helper.config import is_power_of_two
from toruspdo.helper.console import log
from toruspdo.helper.errors import NonFiniteSample, ParseError, WindowTooLarge
from toruspdo.helper.output import frame_to_csv, read_csv_exact
from toruspdo.matrix.assoc import CoeffVector, apply, build_assoc_matrix
from toruspdo.symbol.expression import compile_function
from toruspdo.symbol.symbol import Symbol, fourier_table, sample_symbol


@dataclass(frozen=True, eq=False)
class PeriodicFunction:
    """Samples f(x_q), x_q = 2*pi*q/Q, with optional coefficients f_hat(k) for |k| <= n."""

    samples: np.ndarray
    coeffs: Optional[CoeffVector] = None
    truncated: bool = False

    def __post_init__(self):
        samples = np.array(self.samples, dtype=complex, copy=True).reshape(-1)
        if samples.size < 1:
            raise ValueError("a periodic function needs at least one sample")
        if not np.all(np.isfinite(samples)):
            raise NonFiniteSample("function samples contain NaN or Inf")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)

    @classmethod
    def from_callable(cls, fn: Callable, Q: int) -> "PeriodicFunction":
        x = 2.0 * np.pi * np.arange(Q) / Q
        return cls(np.broadcast_to(np.asarray(fn(x), dtype=complex), (Q,)))

    @classmethod
    def from_expression(cls, expr: str, Q: int) -> "PeriodicFunction":
        """Sample an x-only expression of the symbol grammar."""
        return cls.from_callable(compile_function(expr), Q)

    @classmethod
    def from_coeffs(cls, coeffs: CoeffVector, Q: int) -> "PeriodicFunction":
        """Trigonometric polynomial sum_{|k|<=n} f_hat(k) e^{ixk} sampled on Q points."""
        if 2 * coeffs.n + 1 > Q:
            raise WindowTooLarge(f"2n+1={2 * coeffs.n + 1} exceeds Q={Q}")
        spectrum = np.zeros(Q, dtype=complex)
        spectrum[coeffs.ks % Q] = coeffs.values
        return cls(scipy.fft.ifft(spectrum) * Q, coeffs)

    @property
    def Q(self) -> int:
        return self.samples.size

    @property
    def x(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.Q) / self.Q

    def norm(self) -> float:
        """L^2 norm for the normalized measure dx/2pi."""
        return float(np.sqrt(np.mean(np.abs(self.samples) ** 2)))


def forward_coeffs(f: PeriodicFunction, n: int) -> CoeffVector:
    """
    f_hat(k) = (1/Q) sum_q f(x_q) e^{-i x_q k} for |k| <= n.

    Raises:
        WindowTooLarge: if 2n+1 > Q
    """
    if n < 0:
        raise ValueError(f"window radius n={n} must be >= 0")
    if 2 * n + 1 > f.Q:
        raise WindowTooLarge(f"2n+1={2 * n + 1} exceeds Q={f.Q}")
    spectrum = scipy.fft.fft(f.samples) / f.Q
    return CoeffVector(n, spectrum[np.arange(-n, n + 1) % f.Q])


def _dropped_energy(f: PeriodicFunction, n: int) -> float:
    spectrum = scipy.fft.fft(f.samples) / f.Q
    keep = np.zeros(f.Q, dtype=bool)
    keep[np.arange(-n, n + 1) % f.Q] = True
    return float(np.sqrt(np.sum(np.abs(spectrum[~keep]) ** 2)))


def apply_operator(sym: Symbol, f: PeriodicFunction, n: int) -> PeriodicFunction:
    """
    Samples of T_sigma f on the grid of f, summing over |k| <= n.

    Raises:
        WindowTooLarge: if 2n+1 > Q
    """
    if not is_power_of_two(f.Q):
        raise WindowTooLarge(f"function resolution Q={f.Q} must be a power of two")
    coeffs = forward_coeffs(f, n)
    dropped = _dropped_energy(f, n)
    truncated = dropped > 1e-12 * max(f.norm(), 1e-300)
    if truncated:
        log("APPLY", f"input energy {dropped:.3e} beyond |k| > {n} truncated")

    grid = sample_symbol(sym, f.Q, max(n, 1)).restrict(-n, n)
    phases = np.exp(1j * np.outer(f.x, coeffs.ks))
    samples = (grid.values * phases * coeffs.values[None, :]).sum(axis=1)
    return PeriodicFunction(samples, None, truncated)


def matrix_consistency_residual(sym: Symbol, f: PeriodicFunction, n: int, M: Optional[int] = None,
                                band_tol: float = 1e-13) -> float:
    """
    Normalized L^2 distance between the coefficients of T_sigma f and
    M_sigma applied to f_hat, on |j| <= n.

    M defaults to the largest alias-free band (Q - 1)/2 - n.

    Raises:
        WindowTooLarge: if Q < 2(M + n) + 1
    """
    M = (f.Q - 1) // 2 - n if M is None else M
    if M < 0 or f.Q < 2 * (M + n) + 1:
        raise WindowTooLarge(f"Q={f.Q} too small for M={M}, n={n}")
    direct = forward_coeffs(apply_operator(sym, f, n), n).values

    table = fourier_table(sample_symbol(sym, f.Q, max(n, 1)), M)
    through_matrix = apply(build_assoc_matrix(table, n, band_tol), forward_coeffs(f, n)).values

    scale = max(float(np.linalg.norm(direct)), float(np.linalg.norm(through_matrix)))
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm(direct - through_matrix) / scale)


# =============================================================================
# FUNCTION I/O
# =============================================================================

def function_frame(f: PeriodicFunction) -> pd.DataFrame:
    return pd.DataFrame({"q": np.arange(f.Q), "re": f.samples.real, "im": f.samples.imag})


def write_function_csv(f: PeriodicFunction, path: Optional[str] = None) -> str:
    """Rows (q, re, im); Q is the number of rows."""
    return frame_to_csv(function_frame(f), path)


def read_function_csv(path: str) -> PeriodicFunction:
    """
    Read samples written by write_function_csv.

    Raises:
        ParseError: if columns are missing or q is not 0..Q-1 in order
    """
    frame = read_csv_exact(path)
    missing = {"q", "re", "im"} - set(frame.columns)
    if missing:
        raise ParseError(f"Function CSV {path} lacks columns {sorted(missing)}")
    if not np.array_equal(frame["q"].to_numpy(int), np.arange(len(frame))):
        raise ParseError(f"Function CSV {path} must list q = 0..Q-1 in order")
    return PeriodicFunction(frame["re"].to_numpy(float) + 1j * frame["im"].to_numpy(float))
