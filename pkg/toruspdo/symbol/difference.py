"""
Discrete calculus on symbols: forward differences in k and spectral
derivatives in x.
"""
import math
from typing import Union

import numpy as np
import scipy.fft

from toruspdo.helper.errors import WindowExhausted
from toruspdo.symbol.symbol import FourierTable, ToroidalGrid

DERIVATIVE_CONVENTIONS = ("power", "partial", "falling")

KArray = Union[ToroidalGrid, FourierTable, np.ndarray]


def delta_k(obj: KArray, t: int) -> KArray:
    """
    t-th forward difference in k at fixed x (or fixed m):
        Delta^t phi(k) = sum_h (-1)^(t-h) C(t, h) phi(k + h)

    The k window shrinks by t on the right; nothing is padded.

    Args:
        obj: ToroidalGrid, FourierTable, or an array whose last axis is k
        t: Difference order (>= 0)

    Raises:
        WindowExhausted: if t leaves no k values
    """
    if t < 0:
        raise ValueError(f"difference order t={t} must be >= 0")
    if t == 0:
        return obj

    if isinstance(obj, ToroidalGrid):
        if t >= obj.nk:
            raise WindowExhausted(f"Delta_k^{t} needs more than {obj.nk} k values")
        return ToroidalGrid(np.diff(obj.values, n=t, axis=1), obj.k_start, obj.multiplier)
    if isinstance(obj, FourierTable):
        if t >= obj.nk:
            raise WindowExhausted(f"Delta_k^{t} needs more than {obj.nk} k values")
        return FourierTable(np.diff(obj.coeffs, n=t, axis=1), obj.M, obj.k_start, obj.multiplier)

    values = np.asarray(obj)
    if t >= values.shape[-1]:
        raise WindowExhausted(f"Delta_k^{t} needs more than {values.shape[-1]} k values")
    return np.diff(values, n=t, axis=-1)


def mode_factors(Q: int, h: int, convention: str = "power") -> np.ndarray:
    """
    Multipliers applied to Fourier mode m by the h-th x-derivative.

    power:   m^h                      (D_x = -i d/dx, D_x e^{ixm} = m e^{ixm})
    partial: (i m)^h                  (d/dx)^h
    falling: m (m-1) ... (m-h+1)      falling-factorial D_x^{(h)}
    """
    if convention not in DERIVATIVE_CONVENTIONS:
        raise ValueError(f"Unknown derivative convention {convention!r}; expected {DERIVATIVE_CONVENTIONS}")
    m = scipy.fft.fftfreq(Q, d=1.0 / Q)
    if convention == "power":
        return (m ** h).astype(complex)
    if convention == "partial":
        return (1j * m) ** h
    return _falling(m, h)


def _falling(m: np.ndarray, h: int) -> np.ndarray:
    factors = np.ones(m.shape, dtype=complex)
    for j in range(h):
        factors *= m - j
    return factors


def x_derivative(grid: ToroidalGrid, h: int, convention: str = "power") -> ToroidalGrid:
    """
    Spectral x-derivative of every k column under the given convention.

    Multiplier grids are constant in x, so every derivative of order >= 1 is
    exactly zero.
    """
    if h < 0:
        raise ValueError(f"derivative order {h} must be >= 0")
    if h == 0:
        return grid
    if grid.multiplier:
        return grid.with_values(np.zeros_like(grid.values))
    spectrum = scipy.fft.fft(grid.values, axis=0)
    spectrum *= mode_factors(grid.Q, h, convention).reshape(-1, 1)
    return ToroidalGrid(scipy.fft.ifft(spectrum, axis=0), grid.k_start, False)


def d_x(grid: ToroidalGrid, r: int) -> ToroidalGrid:
    """D_x^r with D_x = -i d/dx, so D_x e^{ixm} = m e^{ixm}."""
    return x_derivative(grid, r, "power")


def inverse_factorial(h: int) -> float:
    """1/h! from the exact integer factorial."""
    return 1.0 / math.factorial(h)


def newton_parts(grid: ToroidalGrid, h: int) -> tuple[np.ndarray, np.ndarray]:
    """
    The h-th Newton term of a grid, split by the sign of the x-mode.

    Modes m >= 0 carry m (m-1) ... (m-h+1) and are meant to be differenced at
    k; modes m < 0 carry (-1)^h |m| (|m|-1) ... (|m|-h+1) and are meant to be
    differenced at k - h (a backward difference at k). Both factors vanish
    once h exceeds |m|, so a trigonometric polynomial in x of degree d has no
    terms beyond h = d.

    Returns:
        (ahead, behind) arrays shaped like grid.values
    """
    if h < 0:
        raise ValueError(f"derivative order {h} must be >= 0")
    if h == 0:
        return np.asarray(grid.values, dtype=complex), np.zeros(grid.values.shape, dtype=complex)
    if grid.multiplier:
        zeros = np.zeros(grid.values.shape, dtype=complex)
        return zeros, zeros.copy()
    m = scipy.fft.fftfreq(grid.Q, d=1.0 / grid.Q)
    ahead = np.where(m >= 0, _falling(m, h), 0.0)
    behind = np.where(m < 0, (-1) ** h * _falling(-m, h), 0.0)
    spectrum = scipy.fft.fft(grid.values, axis=0)
    return (
        scipy.fft.ifft(spectrum * ahead.reshape(-1, 1), axis=0),
        scipy.fft.ifft(spectrum * behind.reshape(-1, 1), axis=0),
    )
