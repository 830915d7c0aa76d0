"""
Matrix-level oracles for the symbol calculus: exact products of associated
matrices and the inverse map from a matrix back to a symbol grid.
"""
from typing import Optional, Union

import numpy as np
import scipy.fft

from toruspdo.helper.errors import TrustedRegionEmpty, WindowTooLarge
from toruspdo.matrix.assoc import AssocMatrix, build_assoc_matrix, matmul
from toruspdo.symbol.symbol import Symbol, ToroidalGrid, fourier_table, sample_symbol

MatrixLike = Union[Symbol, AssocMatrix]


def assoc_of(sym: Symbol, n: int, M: Optional[int] = None, Q: Optional[int] = None,
             band_tol: float = 1e-13) -> AssocMatrix:
    """Sample, transform and truncate a symbol on the window [-n, n]."""
    Q = sym.x_resolution if Q is None else Q
    M = (Q - 1) // 2 if M is None else M
    table = fourier_table(sample_symbol(sym, Q, max(n, 1)), M)
    return build_assoc_matrix(table, n, band_tol)


def compose_exact_matrix(alpha: MatrixLike, beta: MatrixLike, n: int, M: Optional[int] = None,
                         Q: Optional[int] = None) -> AssocMatrix:
    """
    M_alpha M_beta on the window [-n, n] with trusted-region bookkeeping.

    Symbols are turned into matrices with assoc_of; matrices are used as given.

    Raises:
        WindowMismatch: if given matrices have different windows
    """
    A = alpha if isinstance(alpha, AssocMatrix) else assoc_of(alpha, n, M, Q)
    B = beta if isinstance(beta, AssocMatrix) else assoc_of(beta, n, M, Q)
    return matmul(A, B)


def _default_resolution(band: int) -> int:
    Q = 4
    while Q < 2 * band + 1:
        Q *= 2
    return Q


def symbol_from_matrix(matrix: AssocMatrix, Q: Optional[int] = None) -> ToroidalGrid:
    """
    sigma(x_q, k) = sum_{|m| <= band} M_{k+m, k} e^{i x_q m}

    for the columns whose whole band lies in the trusted region,
    |k| <= trusted_radius - band. Band-limited symbols come back exactly.

    Raises:
        TrustedRegionEmpty: if no column is fully trusted
        WindowTooLarge: if 2 * band + 1 > Q
    """
    band = matrix.band
    radius = matrix.trusted_radius - band
    if radius < 0:
        raise TrustedRegionEmpty(
            f"no column is trusted (trusted radius {matrix.trusted_radius}, band {band})"
        )
    Q = _default_resolution(band) if Q is None else Q
    if 2 * band + 1 > Q:
        raise WindowTooLarge(f"band {band} needs Q >= {2 * band + 1}, got Q={Q}")

    ks = np.arange(-radius, radius + 1)
    ms = np.arange(-band, band + 1)
    rows = (ks[None, :] + ms[:, None]) + matrix.origin
    cols = np.broadcast_to(ks[None, :] + matrix.origin, rows.shape)
    spectrum = np.zeros((Q, ks.size), dtype=complex)
    spectrum[ms % Q] = matrix.entries[rows, cols]
    values = scipy.fft.ifft(spectrum, axis=0) * Q
    return ToroidalGrid(values, -radius, multiplier=band == 0)
