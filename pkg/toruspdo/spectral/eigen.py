"""
Dense eigenvalue oracle for truncations and the spectrum of Fourier multipliers.
"""
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from toruspdo.helper.console import log
from toruspdo.helper.errors import ConvergenceFailure, DenseLimitExceeded, MikhlinFailed
from toruspdo.matrix.assoc import AssocMatrix
from toruspdo.riesz.decay import limit_extrapolate
from toruspdo.riesz.mikhlin import MikhlinResult, mikhlin_check, multiplier_values
from toruspdo.symbol.symbol import Symbol

DENSE_LIMIT = 2049


def sort_eigenvalues(values) -> np.ndarray:
    """Lexicographic order by (re, im)."""
    values = np.asarray(values, dtype=complex)
    return values[np.lexsort((values.imag, values.real))]


def eigensolve_truncated(matrix: AssocMatrix, dense_limit: int = DENSE_LIMIT) -> np.ndarray:
    """
    All eigenvalues of the (2n+1) x (2n+1) truncation, ordered by (re, im).

    Triangular truncations (diagonal ones included) return their diagonal
    exactly; everything else goes through scipy.linalg.eigvals.

    Raises:
        DenseLimitExceeded: if 2n+1 > dense_limit
        ConvergenceFailure: if LAPACK does not converge
    """
    if matrix.size > dense_limit:
        raise DenseLimitExceeded(f"window size {matrix.size} exceeds the dense limit {dense_limit}")
    entries = np.asarray(matrix.entries)
    if not np.any(np.tril(entries, -1)) or not np.any(np.triu(entries, 1)):
        return sort_eigenvalues(np.diagonal(entries))
    try:
        values = scipy.linalg.eigvals(entries)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise ConvergenceFailure(f"dense eigensolver failed on n={matrix.n}: {e}")
    return sort_eigenvalues(values)


@dataclass(frozen=True, eq=False)
class MultiplierSpectrum:
    sampled: np.ndarray
    accumulation_points: tuple[complex, ...]
    status: str
    mikhlin: MikhlinResult
    K: int

    def points(self) -> np.ndarray:
        """Sampled range and accumulation points, distinct and ordered."""
        return sort_eigenvalues(np.unique(np.concatenate([self.sampled, np.array(self.accumulation_points, dtype=complex)])))

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "status": self.status,
            "sampled": self.sampled,
            "accumulation_points": list(self.accumulation_points),
            "mikhlin": self.mikhlin.to_dict(),
        }


def multiplier_spectrum(sym: Symbol, K: int = None, dedupe_tol: float = 1e-9) -> MultiplierSpectrum:
    """
    Spec(T_sigma) = closure of {sigma(k)} for a Fourier multiplier.

    Returns the sampled range over |k| <= K plus the limits of sigma(k) as
    k -> +-infinity, extrapolated from k = +-K/4, +-K/2, +-K. Limits already
    present in the sampled range are not repeated. status is EXACT-SAMPLED
    when nothing was added, CLOSURE-ESTIMATED otherwise.

    Raises:
        MikhlinFailed: if the Mikhlin check rejects the multiplier
    """
    K = sym.k_window if K is None else K
    mikhlin = mikhlin_check(sym, K)
    if not mikhlin.passed:
        raise MikhlinFailed(
            f"{sym.name}: Mikhlin constant grows from {mikhlin.C_estimate:.6g} to {mikhlin.C_doubled:.6g} under doubling"
        )
    values = multiplier_values(sym, K)
    sampled = values.copy()

    accumulation: list[complex] = []
    scale = max(1.0, float(np.abs(values).max()))
    for sign in (1, -1):
        probes = [values[K + sign * w] for w in (K // 4, K // 2, K)]
        limit = complex(limit_extrapolate(probes))
        known = np.concatenate([sampled, np.array(accumulation, dtype=complex)])
        if np.min(np.abs(known - limit)) > dedupe_tol * scale:
            accumulation.append(limit)

    status = "CLOSURE-ESTIMATED" if accumulation else "EXACT-SAMPLED"
    if accumulation:
        log("SPECTRAL", f"{sym.name}: accumulation points {accumulation} estimated from the tails")
    return MultiplierSpectrum(sampled=sampled, accumulation_points=tuple(accumulation), status=status,
                              mikhlin=mikhlin, K=K)
