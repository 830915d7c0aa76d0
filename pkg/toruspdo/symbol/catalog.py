"""
Named symbols that the expression grammar cannot express.

- indicator_symbol:  sigma(x,k) = 1 on 0 <= x < 2*pi/2^|k|, 0 elsewhere
  (an operator whose M* M entries decay like 2^-max(|j|,|k|)).
- rademacher_symbol: symbol of a strictly singular, non-compact Riesz
  operator built from Rademacher functions.
- product_symbol / sum_symbol: alpha(k) V(x) and alpha(k) + V(x).
"""
from typing import Callable

import numpy as np

from toruspdo.symbol.expression import compile_function, compile_multiplier
from toruspdo.symbol.symbol import Symbol

# Jump locations are compared on this dyadic lattice (in turns, x/2pi) so
# that grid points sitting on a jump are classified exactly.
_DYADIC_BITS = 40


def _turns(x) -> np.ndarray:
    """x / 2pi reduced to [0, 1) and snapped to the 2^-40 dyadic lattice, as integers."""
    t = np.mod(np.asarray(x, dtype=float) / (2.0 * np.pi), 1.0)
    return np.round(t * 2.0 ** _DYADIC_BITS).astype(np.int64) % (1 << _DYADIC_BITS)


# =============================================================================
# PIECEWISE INDICATOR
# =============================================================================

def indicator_symbol(K: int = 16, Q: int = 4096) -> Symbol:
    """
    sigma(x,k) = 1 for 0 <= x < 2*pi/2^|k|, else 0.

    Points on the jump belong to the closed-left interval [0, 2*pi/2^|k|);
    the discretization error of its coefficients is O(1/Q).
    """

    def evaluate(x, k):
        turns = _turns(x)
        level = np.abs(np.asarray(k, dtype=float)).astype(np.int64)
        # 0 <= t < 2^-|k|  <=>  turns < 2^(40-|k|); beyond 40 bits only t=0 qualifies
        shift = np.clip(_DYADIC_BITS - level, 0, None)
        limit = np.where(level <= _DYADIC_BITS, np.left_shift(np.int64(1), shift), 1)
        return (turns < limit).astype(complex)

    return Symbol.closed_form(evaluate, K=K, Q=Q, name="indicator")


# =============================================================================
# STRICTLY SINGULAR EXAMPLE (RADEMACHER)
# =============================================================================

def rademacher(n: int, x) -> np.ndarray:
    """r_n(x) = (-1)^floor(2^n x / 2pi), the n-th Rademacher function."""
    turns = _turns(x)
    if n > _DYADIC_BITS:
        return np.ones_like(turns, dtype=float)
    bit = np.right_shift(turns, _DYADIC_BITS - n) & 1
    return 1.0 - 2.0 * bit


def rademacher_weights(p: float, terms: int) -> np.ndarray:
    """2^((n+2)(p-1)/2) for n = 1..terms."""
    n = np.arange(1, terms + 1, dtype=float)
    return 2.0 ** ((n + 2.0) * (p - 1.0) / 2.0)


def rademacher_coefficients(k, terms: int) -> np.ndarray:
    """
    c_n(k) = integral over E_n = (2pi/2^(n+2), 2pi/2^(n+1)) of e^{-ixk} dx/2pi.

    Returns an array of shape (terms,) + k.shape.
    """
    k = np.asarray(k, dtype=float)
    n = np.arange(1, terms + 1, dtype=float).reshape((-1,) + (1,) * k.ndim)
    a = 2.0 * np.pi / 2.0 ** (n + 2.0)
    b = 2.0 * a
    safe_k = np.where(k == 0, 1.0, k)
    with np.errstate(all="ignore"):
        oscillating = (np.exp(-1j * safe_k * a) - np.exp(-1j * safe_k * b)) / (2j * np.pi * safe_k)
    return np.where(k == 0, (b - a) / (2.0 * np.pi), oscillating)


def rademacher_bound_sums(k, p: float = 1.5, terms: int = 64) -> np.ndarray:
    """S_k = sum_n 2^((n+2)(p-1)/2) |exp(i k 2pi/2^(n+2)) - 1|."""
    k = np.asarray(k, dtype=float)
    n = np.arange(1, terms + 1, dtype=float).reshape((-1,) + (1,) * k.ndim)
    weights = rademacher_weights(p, terms).reshape(n.shape)
    return (weights * np.abs(np.exp(1j * k * 2.0 * np.pi / 2.0 ** (n + 2.0)) - 1.0)).sum(axis=0)


def rademacher_symbol(p: float = 1.5, terms: int = 64, K: int = 64, Q: int = 4096) -> Symbol:
    """
    sigma_A(x,k) = e^{-ixk} sum_{n=1}^{terms} 2^((n+2)(p-1)/2) c_n(k) r_n(x).

    sup_x |sigma_A(x,k)| <= S_k / (2 pi |k|), which tends to zero, so the
    operator is Riesz on L^p; for 1 < p < 2 it is not compact, which no
    finite computation can certify.
    """
    if not 1.0 < p < np.inf:
        raise ValueError(f"p={p} must satisfy 1 < p < inf")
    weights = rademacher_weights(p, terms)

    def evaluate(x, k):
        x = np.asarray(x, dtype=float)
        k = np.asarray(k, dtype=float)
        coeffs = rademacher_coefficients(k, terms)
        total = np.zeros(np.broadcast(x, k).shape, dtype=complex)
        for idx in range(terms):
            total += weights[idx] * coeffs[idx] * rademacher(idx + 1, x)
        return np.exp(-1j * x * k) * total

    notes = (
        f"strictly singular example (p={p}): the operator is a non-compact Riesz operator on L^p "
        "for 1 < p < 2; non-compactness is not numerically certified",
    )
    return Symbol.closed_form(evaluate, K=K, Q=Q, name=f"rademacher_p{p}", notes=notes)


# =============================================================================
# PRODUCTS AND SUMS OF MULTIPLIERS AND POTENTIALS
# =============================================================================

def _as_multiplier(alpha) -> Callable:
    return compile_multiplier(alpha) if isinstance(alpha, str) else alpha


def _as_potential(potential) -> Callable:
    return compile_function(potential) if isinstance(potential, str) else potential


def product_symbol(alpha, potential, K: int = 64, Q: int = 1024) -> Symbol:
    """sigma(x,k) = alpha(k) V(x); alpha and V are expressions or callables."""
    a, v = _as_multiplier(alpha), _as_potential(potential)
    return Symbol.closed_form(lambda x, k: np.asarray(a(k)) * np.asarray(v(x)), K=K, Q=Q, name="alpha*V")


def sum_symbol(alpha, potential, K: int = 64, Q: int = 1024) -> Symbol:
    """sigma(x,k) = alpha(k) + V(x); alpha and V are expressions or callables."""
    a, v = _as_multiplier(alpha), _as_potential(potential)
    return Symbol.closed_form(lambda x, k: np.asarray(a(k)) + np.asarray(v(x)), K=K, Q=Q, name="alpha+V")


CATALOG = {
    "indicator": indicator_symbol,
    "rademacher": rademacher_symbol,
    "product": product_symbol,
    "sum": sum_symbol,
}
