"""
L^2 norm estimates of associated matrices.

- crone_norm_diagonal:   sup_p sup_k |((M* M)^p)_{kk}|^(1/p)       -> ||M||^2
- crone_norm_truncation: sup_n ||P_n M* M P_n|| (Gram blocks)       -> ||M||^2
- schur_bound:           sqrt(max row sum * max column sum)        >= ||M||

Each estimate is a sequence with a sup we can never reach; reports carry the
sequence, its best value and whether it settled.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg

from toruspdo.helper.console import log
from toruspdo.helper.errors import NonHermitianBlock, TrustedRegionEmpty
from toruspdo.helper.parallel import parallel_map
from toruspdo.matrix.assoc import AssocMatrix, adjoint, gram_block, matmul
from toruspdo.symbol.symbol import FourierTable, ToroidalGrid


class NormMethod(str, Enum):
    CRONE_DIAGONAL = "CroneDiagonal"
    CRONE_TRUNCATION = "CroneTruncation"
    SCHUR = "Schur"


@dataclass(frozen=True)
class NormEstimate:
    """Estimates of ||M||^2; per_n holds (n, value) pairs."""

    lower: float
    upper: float
    per_n: tuple[tuple[int, float], ...]
    method: NormMethod
    converged: Optional[bool] = None
    diagonal_integrals: tuple[tuple[int, float], ...] = field(default=())

    @property
    def estimate(self) -> float:
        return self.per_n[-1][1] if self.per_n else self.lower

    def to_dict(self) -> dict:
        out = {
            "method": self.method,
            "lower": self.lower,
            "upper": self.upper,
            "estimate": self.estimate,
            "converged": self.converged,
            "per_n": [list(pair) for pair in self.per_n],
        }
        if self.diagonal_integrals:
            out["integral_tau_power"] = [list(pair) for pair in self.diagonal_integrals]
        return out


def schur_bound(matrix: AssocMatrix) -> float:
    """sqrt(max_j sum_k |M_jk| * max_k sum_j |M_jk|) over the trusted region."""
    block = np.abs(matrix.trusted_block())
    if block.size == 0:
        return 0.0
    return float(np.sqrt(block.sum(axis=1).max() * block.sum(axis=0).max()))


def crone_norm_diagonal(matrix: AssocMatrix, max_power: int = 16) -> NormEstimate:
    """
    per_n[p] = sup_k |((M* M)^p)_{kk}|^(1/p) over the trusted region, p = 1..max_power.

    The p-th diagonal entry is the integral of tau^p in the symbol picture
    (tau the symbol of M* M); these raw values are reported as
    diagonal_integrals. G = M* M is scaled by schur_bound^2 before
    powering so the entries stay finite. Each power loses the band of G
    (twice the band of M) from the trusted radius.

    Returns:
        NormEstimate with lower = max per_n and upper = schur_bound^2

    Raises:
        TrustedRegionEmpty: if max_power powers do not fit in the window
    """
    if max_power < 1:
        raise ValueError(f"max_power={max_power} must be >= 1")
    gram = matmul(adjoint(matrix), matrix)
    last_radius = gram.trusted_radius - (max_power - 1) * gram.band
    if gram.trusted_radius < 0 or last_radius < 0:
        raise TrustedRegionEmpty(
            f"power {max_power} of M*M (band {gram.band}) does not fit in window n={matrix.n} "
            f"with trusted radius {matrix.trusted_radius}"
        )

    bound = schur_bound(matrix)
    scale = bound * bound
    upper = scale
    if scale == 0.0:
        zeros = tuple((p, 0.0) for p in range(1, max_power + 1))
        return NormEstimate(0.0, 0.0, zeros, NormMethod.CRONE_DIAGONAL, True, zeros)

    step = AssocMatrix(gram.n, gram.entries / scale, gram.band, gram.trusted_radius)
    power = step
    per_n = []
    integrals = []
    for p in range(1, max_power + 1):
        if p > 1:
            power = matmul(power, step)
        diag = np.abs(np.diagonal(power.trusted_block()))
        peak = float(diag.max())
        per_n.append((p, scale * peak ** (1.0 / p)))
        with np.errstate(over="ignore"):
            integrals.append((p, float(peak * np.power(np.float64(scale), p))))

    values = [v for _, v in per_n]
    lower = float(max(values))
    if lower > upper * (1.0 + 1e-8):
        log("SPECTRAL", f"diagonal estimate {lower:.6g} exceeds the Schur bound {upper:.6g}")
    return NormEstimate(lower, upper, tuple(per_n), NormMethod.CRONE_DIAGONAL, None, tuple(integrals))


def gram_sweep(table: FourierTable, grid: ToroidalGrid, ns) -> list[tuple[int, np.ndarray]]:
    """Gram blocks for each n in ns; all are slices of the block of the largest n."""
    ns = sorted(set(int(n) for n in ns))
    if not ns:
        return []
    largest = ns[-1]
    full = gram_block(table, grid, largest)
    return [(n, full[largest - n:largest + n + 1, largest - n:largest + n + 1]) for n in ns]


def _largest_eigenvalue(item: tuple[int, np.ndarray], hermitian_tol: float) -> tuple[int, float]:
    n, block = item
    block = np.asarray(block)
    scale = max(1.0, float(np.abs(block).max()))
    asymmetry = float(np.abs(block - block.conj().T).max()) if block.size else 0.0
    if asymmetry > hermitian_tol * scale:
        raise NonHermitianBlock(f"Gram block n={n} deviates from Hermitian by {asymmetry:.3e}")
    if block.size == 0:
        return n, 0.0
    hermitian = (block + block.conj().T) / 2.0
    top = scipy.linalg.eigvalsh(hermitian, subset_by_index=[block.shape[0] - 1, block.shape[0] - 1])
    return n, max(float(top[-1]), 0.0)


def crone_norm_truncation(
    gram_blocks,
    tol_rel: float = 1e-3,
    hermitian_tol: float = 1e-10,
    upper: float = float("inf"),
) -> NormEstimate:
    """
    per_n = ||P_n M* M P_n|| as the largest eigenvalue of each Hermitian block.

    The estimate is the last value; converged when it differs from the one
    before by less than tol_rel (relative). Blocks are processed in parallel.

    Args:
        gram_blocks: (n, block) pairs for increasing n
        tol_rel: Relative convergence tolerance
        hermitian_tol: Allowed deviation from Hermitian symmetry
        upper: Known upper bound (e.g. schur_bound^2), reported as is

    Raises:
        NonHermitianBlock: if a block is not Hermitian within hermitian_tol
    """
    items = sorted(((int(n), b) for n, b in gram_blocks), key=lambda item: item[0])
    if not items:
        raise ValueError("crone_norm_truncation needs at least one Gram block")
    per_n = parallel_map(lambda item: _largest_eigenvalue(item, hermitian_tol), items)

    values = [v for _, v in per_n]
    drops = [i for i in range(1, len(values)) if values[i] < values[i - 1] - 1e-12 * max(1.0, values[i - 1])]
    if drops:
        log("SPECTRAL", f"truncation norms are not monotone at n={[per_n[i][0] for i in drops]}")
    converged = None
    if len(values) >= 2:
        last, prev = values[-1], values[-2]
        converged = abs(last - prev) < tol_rel * max(abs(last), 1e-300)
    return NormEstimate(float(max(values)), upper, tuple(per_n), NormMethod.CRONE_TRUNCATION, converged)
