"""
Toroidal symbols sigma(x, k) on T x Z, their grids and Fourier tables.

Conventions used everywhere in the package:
    x_q = 2*pi*q/Q for 0 <= q < Q
    sigma_hat(m, k) = (1/Q) sum_q sigma(x_q, k) exp(-i x_q m)
i.e. the normalized measure dx/(2*pi), so sigma_hat(0, k) is the mean of
sigma(., k).
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np
import scipy.fft
import scipy.signal

from toruspdo.helper.config import is_power_of_two
from toruspdo.helper.errors import NonFiniteSample, WindowExhausted, WindowTooLarge


def bracket(k):
    """Japanese bracket <k> = (1 + k^2)^(1/2)."""
    k = np.asarray(k, dtype=float)
    return np.sqrt(1.0 + k * k)


class SymbolKind(str, Enum):
    CLOSED_FORM = "closed_form"
    SAMPLED = "sampled"
    MULTIPLIER = "multiplier"


# =============================================================================
# DISCRETE CARRIERS
# =============================================================================

class _KAxis:
    """Shared bookkeeping for arrays whose second axis is a contiguous k range."""

    k_start: int

    @property
    def nk(self) -> int:
        return self._array().shape[1]

    @property
    def k_stop(self) -> int:
        """Last k (inclusive)."""
        return self.k_start + self.nk - 1

    @property
    def ks(self) -> np.ndarray:
        return np.arange(self.k_start, self.k_stop + 1)

    @property
    def K(self) -> int:
        """Largest symmetric radius covered by the k range."""
        return min(-self.k_start, self.k_stop)

    def k_index(self, k: int) -> int:
        if not self.k_start <= k <= self.k_stop:
            raise WindowExhausted(f"k={k} outside window [{self.k_start}, {self.k_stop}]")
        return k - self.k_start

    def _array(self) -> np.ndarray:
        raise NotImplementedError


def _freeze(values: np.ndarray) -> np.ndarray:
    values = np.array(values, dtype=complex, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class ToroidalGrid(_KAxis):
    """
    Samples sigma(x_q, k) for 0 <= q < Q and k in [k_start, k_start + nk).

    A grid sampled by sample_symbol covers the symmetric window |k| <= K;
    forward differences in k shrink the window on the right.
    """

    values: np.ndarray
    k_start: int
    multiplier: bool = False

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 2:
            raise ValueError(f"grid values must be 2-D (Q, nk), got shape {values.shape}")
        if values.shape[0] < 2:
            raise ValueError(f"grid needs Q >= 2 samples in x, got {values.shape[0]}")
        if values.shape[1] < 1:
            raise WindowExhausted("grid has an empty k window")
        if not np.all(np.isfinite(values)):
            raise NonFiniteSample("grid contains NaN or Inf samples")
        object.__setattr__(self, "values", _freeze(values))

    @classmethod
    def symmetric(cls, values: np.ndarray, multiplier: bool = False) -> "ToroidalGrid":
        """Wrap a Q x (2K+1) array indexed by k in [-K, K]."""
        nk = np.asarray(values).shape[1]
        if nk % 2 != 1:
            raise ValueError(f"symmetric grid needs an odd number of columns, got {nk}")
        return cls(values, -(nk // 2), multiplier)

    def _array(self) -> np.ndarray:
        return self.values

    @property
    def Q(self) -> int:
        return self.values.shape[0]

    @property
    def x(self) -> np.ndarray:
        return 2.0 * np.pi * np.arange(self.Q) / self.Q

    def column(self, k: int) -> np.ndarray:
        return self.values[:, self.k_index(k)]

    def restrict(self, k_lo: int, k_hi: int) -> "ToroidalGrid":
        """Sub-grid for k in [k_lo, k_hi]."""
        lo, hi = self.k_index(k_lo), self.k_index(k_hi)
        return ToroidalGrid(self.values[:, lo:hi + 1], k_lo, self.multiplier)

    def with_values(self, values: np.ndarray, k_start: Optional[int] = None) -> "ToroidalGrid":
        return ToroidalGrid(values, self.k_start if k_start is None else k_start, self.multiplier)


@dataclass(frozen=True, eq=False)
class FourierTable(_KAxis):
    """coeffs[m + M, k - k_start] approximates sigma_hat(m, k) for |m| <= M."""

    coeffs: np.ndarray
    M: int
    k_start: int
    multiplier: bool = False

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs)
        if coeffs.ndim != 2 or coeffs.shape[0] != 2 * self.M + 1:
            raise ValueError(f"coeffs must have shape (2M+1, nk) with M={self.M}, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise NonFiniteSample("Fourier table contains NaN or Inf")
        object.__setattr__(self, "coeffs", _freeze(coeffs))

    def _array(self) -> np.ndarray:
        return self.coeffs

    @property
    def ms(self) -> np.ndarray:
        return np.arange(-self.M, self.M + 1)

    def coeff(self, m: int, k: int) -> complex:
        if abs(m) > self.M:
            return 0j
        return complex(self.coeffs[m + self.M, self.k_index(k)])

    def row(self, m: int) -> np.ndarray:
        """sigma_hat(m, .) over the k window."""
        return self.coeffs[m + self.M]

    def centers(self) -> np.ndarray:
        """sigma_hat(0, k): the mean of sigma(., k)."""
        return self.row(0)

    def shifted(self, lam: complex) -> "FourierTable":
        """Table of sigma(x, k) - lam."""
        coeffs = np.array(self.coeffs)
        coeffs[self.M] -= lam
        return FourierTable(coeffs, self.M, self.k_start, self.multiplier)


# =============================================================================
# SYMBOL
# =============================================================================

@dataclass(frozen=True, eq=False)
class Symbol:
    """
    A toroidal symbol.

    closed_form evaluators are called as evaluator(x, k) with x of shape (Q, 1)
    and k of shape (1, nk) (float, integer-valued) and must broadcast to (Q, nk).
    multiplier evaluators are called as evaluator(k) with k of shape (nk,).
    """

    kind: SymbolKind
    k_window: int
    x_resolution: int
    evaluator: Optional[Callable] = None
    grid: Optional[ToroidalGrid] = None
    name: str = "symbol"
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.k_window < 1:
            raise ValueError(f"k_window K must be >= 1, got {self.k_window}")
        if not is_power_of_two(self.x_resolution) or self.x_resolution < 2:
            raise ValueError(f"x_resolution Q must be a power of two >= 2, got {self.x_resolution}")
        if self.kind is SymbolKind.SAMPLED:
            if self.grid is None:
                raise ValueError("sampled symbol needs a grid")
        elif self.evaluator is None:
            raise ValueError(f"{self.kind.value} symbol needs an evaluator")

    @classmethod
    def closed_form(cls, evaluator: Callable, K: int = 64, Q: int = 1024, name: str = "closed_form",
                    notes: tuple[str, ...] = ()) -> "Symbol":
        return cls(SymbolKind.CLOSED_FORM, K, Q, evaluator=evaluator, name=name, notes=notes)

    @classmethod
    def multiplier(cls, evaluator: Callable, K: int = 64, Q: int = 1024, name: str = "multiplier",
                   notes: tuple[str, ...] = ()) -> "Symbol":
        return cls(SymbolKind.MULTIPLIER, K, Q, evaluator=evaluator, name=name, notes=notes)

    @classmethod
    def sampled(cls, grid: ToroidalGrid, name: str = "sampled", notes: tuple[str, ...] = ()) -> "Symbol":
        return cls(SymbolKind.SAMPLED, max(grid.K, 1), grid.Q, grid=grid, name=name, notes=notes)

    @property
    def is_multiplier(self) -> bool:
        if self.kind is SymbolKind.SAMPLED:
            return self.grid.multiplier
        return self.kind is SymbolKind.MULTIPLIER

    def with_window(self, K: Optional[int] = None, Q: Optional[int] = None) -> "Symbol":
        """Same symbol analyzed on another window."""
        return Symbol(
            self.kind,
            self.k_window if K is None else K,
            self.x_resolution if Q is None else Q,
            evaluator=self.evaluator,
            grid=self.grid,
            name=self.name,
            notes=self.notes,
        )

    def scaled(self, c: complex) -> "Symbol":
        """The symbol c * sigma."""
        if self.kind is SymbolKind.SAMPLED:
            return Symbol.sampled(self.grid.with_values(c * self.grid.values), f"{c}*{self.name}", self.notes)
        if self.kind is SymbolKind.MULTIPLIER:
            fn = self.evaluator
            return Symbol.multiplier(lambda k: c * np.asarray(fn(k)), self.k_window, self.x_resolution,
                                     f"{c}*{self.name}", self.notes)
        fn = self.evaluator
        return Symbol.closed_form(lambda x, k: c * np.asarray(fn(x, k)), self.k_window, self.x_resolution,
                                  f"{c}*{self.name}", self.notes)

    def sample(self, Q: Optional[int] = None, K: Optional[int] = None) -> ToroidalGrid:
        return sample_symbol(self, self.x_resolution if Q is None else Q, self.k_window if K is None else K)


# =============================================================================
# OPERATIONS
# =============================================================================

def sample_symbol(sym: Symbol, Q: int, K: int) -> ToroidalGrid:
    """
    Sample a symbol on the Q x (2K+1) grid x_q = 2*pi*q/Q, |k| <= K.

    Sampled symbols are resampled in x by trigonometric interpolation
    (scipy.signal.resample) when Q differs from the stored resolution.

    Raises:
        NonFiniteSample: if any evaluation is NaN/Inf
        WindowTooLarge: if a sampled symbol does not cover |k| <= K
    """
    if not is_power_of_two(Q) or Q < 2:
        raise ValueError(f"Q={Q} must be a power of two >= 2")
    if K < 1:
        raise ValueError(f"K={K} must be >= 1")

    k = np.arange(-K, K + 1, dtype=float)
    if sym.kind is SymbolKind.SAMPLED:
        source = sym.grid
        if source.k_start > -K or source.k_stop < K:
            raise WindowTooLarge(
                f"sampled symbol {sym.name!r} covers k in [{source.k_start}, {source.k_stop}], requested |k| <= {K}"
            )
        values = source.restrict(-K, K).values
        if Q != source.Q:
            values = scipy.signal.resample(values, Q, axis=0)
        multiplier = source.multiplier
    elif sym.kind is SymbolKind.MULTIPLIER:
        column = np.asarray(sym.evaluator(k), dtype=complex)
        values = np.broadcast_to(column.reshape(1, -1), (Q, 2 * K + 1))
        multiplier = True
    else:
        x = (2.0 * np.pi * np.arange(Q) / Q).reshape(-1, 1)
        values = np.broadcast_to(np.asarray(sym.evaluator(x, k.reshape(1, -1)), dtype=complex), (Q, 2 * K + 1))
        multiplier = False

    if not np.all(np.isfinite(values)):
        bad_q, bad_k = np.argwhere(~np.isfinite(values))[0]
        raise NonFiniteSample(
            f"symbol {sym.name!r} is not finite at x_q with q={bad_q}, k={int(bad_k) - K}"
        )
    return ToroidalGrid(values, -K, multiplier)


def fourier_table(grid: ToroidalGrid, M: int) -> FourierTable:
    """
    Partial Fourier coefficients sigma_hat(m, k) for |m| <= M.

    Exact for columns that are trigonometric polynomials of degree <= Q-M-1.
    Multiplier grids get exactly zero coefficients for m != 0.

    Raises:
        WindowTooLarge: if 2M+1 > Q
    """
    if M < 0:
        raise ValueError(f"M={M} must be >= 0")
    if 2 * M + 1 > grid.Q:
        raise WindowTooLarge(f"Fourier window 2M+1={2 * M + 1} exceeds Q={grid.Q}")

    if grid.multiplier:
        coeffs = np.zeros((2 * M + 1, grid.nk), dtype=complex)
        coeffs[M] = grid.values[0]
        return FourierTable(coeffs, M, grid.k_start, multiplier=True)

    spectrum = scipy.fft.fft(grid.values, axis=0) / grid.Q
    rows = np.arange(-M, M + 1) % grid.Q
    return FourierTable(spectrum[rows], M, grid.k_start)


def grid_from_table(table: FourierTable, Q: int) -> ToroidalGrid:
    """Inverse of fourier_table: sum_m sigma_hat(m, k) exp(i x_q m) on Q points."""
    if 2 * table.M + 1 > Q:
        raise WindowTooLarge(f"Fourier window 2M+1={2 * table.M + 1} exceeds Q={Q}")
    spectrum = np.zeros((Q, table.nk), dtype=complex)
    spectrum[np.arange(-table.M, table.M + 1) % Q] = table.coeffs
    return ToroidalGrid(scipy.fft.ifft(spectrum, axis=0) * Q, table.k_start, table.multiplier)


def sup_abs_per_k(grid: ToroidalGrid) -> np.ndarray:
    """sup_x |sigma(x, k)| for every k of the grid."""
    return np.abs(grid.values).max(axis=0)
