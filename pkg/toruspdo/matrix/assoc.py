"""
Associated matrix of a toroidal symbol.

    (M_sigma)_{jk} = sigma_hat(j - k, k),   j, k in [-n, n]

The infinite matrix is stored as its (2n+1) x (2n+1) truncation together
with two integers that say how far the truncation can be believed:

- band: entries with |j - k| > band are exactly zero
- trusted_radius: entries with |j|, |k| <= trusted_radius coincide with the
  infinite matrix (a product of truncations loses min(band_A, band_B)
  at the window edge)
"""
from dataclasses import dataclass

import numpy as np

from toruspdo.helper.errors import WindowMismatch, WindowTooSmall
from toruspdo.symbol.symbol import FourierTable, ToroidalGrid


def _frozen(values) -> np.ndarray:
    values = np.array(values, dtype=complex, copy=True)
    values.setflags(write=False)
    return values


# =============================================================================
# TYPES
# =============================================================================

@dataclass(frozen=True, eq=False)
class CoeffVector:
    """Sequence phi(k) for k in [-n, n]; values[k + n] = phi(k)."""

    n: int
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.shape != (2 * self.n + 1,):
            raise WindowMismatch(f"CoeffVector with n={self.n} needs {2 * self.n + 1} values, got shape {values.shape}")
        object.__setattr__(self, "values", _frozen(values))

    @classmethod
    def basis(cls, n: int, k: int) -> "CoeffVector":
        """The unit vector e_k."""
        values = np.zeros(2 * n + 1, dtype=complex)
        values[k + n] = 1.0
        return cls(n, values)

    @property
    def ks(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1)

    def at(self, k: int) -> complex:
        if abs(k) > self.n:
            return 0j
        return complex(self.values[k + self.n])

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True, eq=False)
class AssocMatrix:
    """Truncated associated matrix; entries[j + n, k + n] holds M_{jk}."""

    n: int
    entries: np.ndarray
    band: int
    trusted_radius: int

    def __post_init__(self):
        size = 2 * self.n + 1
        entries = np.asarray(self.entries)
        if entries.shape != (size, size):
            raise WindowMismatch(f"AssocMatrix with n={self.n} needs shape {(size, size)}, got {entries.shape}")
        if self.band < 0:
            raise ValueError(f"band={self.band} must be >= 0")
        object.__setattr__(self, "entries", _frozen(entries))

    @property
    def origin(self) -> int:
        """Array position of the signed index 0."""
        return self.n

    @property
    def size(self) -> int:
        return 2 * self.n + 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1)

    @property
    def has_trusted_region(self) -> bool:
        return self.trusted_radius >= 0

    def entry(self, j: int, k: int) -> complex:
        if abs(j) > self.n or abs(k) > self.n:
            raise WindowMismatch(f"({j}, {k}) lies outside the window [-{self.n}, {self.n}]")
        return complex(self.entries[j + self.origin, k + self.origin])

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.entries).copy()

    def trusted_block(self, radius: int = None) -> np.ndarray:
        """Entries with |j|, |k| <= radius (default: the trusted radius)."""
        r = self.trusted_radius if radius is None else radius
        if r < 0:
            return np.zeros((0, 0), dtype=complex)
        lo, hi = self.origin - r, self.origin + r + 1
        return self.entries[lo:hi, lo:hi]


# =============================================================================
# BUILDERS AND ARITHMETIC
# =============================================================================

def live_rows(table: FourierTable, band_tol: float = 1e-13) -> np.ndarray:
    """live[m + M] is False for coefficient rows below band_tol * max|coeffs|."""
    magnitudes = np.abs(table.coeffs).max(axis=1)
    scale = magnitudes.max() if magnitudes.size else 0.0
    return magnitudes > band_tol * scale


def effective_band(table: FourierTable, band_tol: float = 1e-13) -> int:
    """Largest |m| whose coefficient row is not negligible (relative to max|coeffs|)."""
    live = np.nonzero(live_rows(table, band_tol))[0]
    if live.size == 0:
        return 0
    return int(np.abs(table.ms[live]).max())


def build_assoc_matrix(table: FourierTable, n: int, band_tol: float = 1e-13) -> AssocMatrix:
    """
    Build the truncation of M_sigma on the window [-n, n].

    Coefficient rows below band_tol * max|coeffs| are recorded as exact
    zeros, so trigonometric polynomials give exactly banded matrices and
    multipliers give exactly diagonal ones.

    Args:
        table: Fourier table covering |k| <= n
        n: Window radius
        band_tol: Relative threshold of the band detection

    Returns:
        AssocMatrix with band = effective band and trusted_radius = n

    Raises:
        WindowTooSmall: if the table does not cover |k| <= n
    """
    if n < 0:
        raise ValueError(f"window radius n={n} must be >= 0")
    if table.k_start > -n or table.k_stop < n:
        raise WindowTooSmall(f"n={n} exceeds the table window k in [{table.k_start}, {table.k_stop}]")

    band = min(effective_band(table, band_tol), table.M)
    idx = np.arange(-n, n + 1)
    j, k = np.meshgrid(idx, idx, indexing="ij")
    m = j - k
    mask = np.abs(m) <= band
    mask[mask] = live_rows(table, band_tol)[m[mask] + table.M]
    entries = np.zeros((2 * n + 1, 2 * n + 1), dtype=complex)
    entries[mask] = table.coeffs[m[mask] + table.M, k[mask] - table.k_start]
    return AssocMatrix(n, entries, band, n)


def adjoint(matrix: AssocMatrix) -> AssocMatrix:
    """(M*)_{jk} = conj(M_{kj}) on the same window."""
    return AssocMatrix(matrix.n, matrix.entries.conj().T, matrix.band, matrix.trusted_radius)


def matmul(A: AssocMatrix, B: AssocMatrix) -> AssocMatrix:
    """
    Finite product on the shared window.

    The infinite sum over h is cut at |h| <= n, so only |j|, |k| <=
    min(r_A, r_B) - min(band_A, band_B) is trusted.

    Raises:
        WindowMismatch: if the windows differ
    """
    if A.n != B.n:
        raise WindowMismatch(f"cannot multiply windows n={A.n} and n={B.n}")
    band = min(A.band + B.band, 2 * A.n)
    trusted = min(A.trusted_radius, B.trusted_radius) - min(A.band, B.band)
    return AssocMatrix(A.n, A.entries @ B.entries, band, max(trusted, -1))


def apply(matrix: AssocMatrix, v: CoeffVector) -> CoeffVector:
    """(M phi)(j) = sum_k M_{jk} phi(k)."""
    if matrix.n != v.n:
        raise WindowMismatch(f"matrix window n={matrix.n} does not match vector window n={v.n}")
    return CoeffVector(v.n, matrix.entries @ v.values)


def gram_block(table: FourierTable, grid: ToroidalGrid, n: int) -> np.ndarray:
    """
    The (2n+1) x (2n+1) block of M* M from inner products of the columns
    sigma(x, k) e^{ixk}:

        G_{jk} = (1/Q) sum_q conj(sigma(x_q, j) e^{i x_q j}) sigma(x_q, k) e^{i x_q k}

    Exact (no aliasing) when Q >= 2(M + n) + 1 and the columns have x-degree <= M.

    Raises:
        WindowTooSmall: if the grid is too coarse or too narrow in k
    """
    if grid.Q < 2 * (table.M + n) + 1:
        raise WindowTooSmall(f"Q={grid.Q} too small for M={table.M}, n={n}: need Q >= {2 * (table.M + n) + 1}")
    if grid.k_start > -n or grid.k_stop < n:
        raise WindowTooSmall(f"n={n} exceeds the grid window k in [{grid.k_start}, {grid.k_stop}]")
    ks = np.arange(-n, n + 1)
    columns = grid.values[:, ks - grid.k_start] * np.exp(1j * np.outer(grid.x, ks))
    return columns.conj().T @ columns / grid.Q
