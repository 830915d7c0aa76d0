"""
Sufficient conditions for invertibility from the associated matrix.

With a_k = sigma_hat(0, k) (the mean of sigma(., k)):

    (i)   inf_k |a_k| > 0
    (ii)  sup_k sum_{j != k} |sigma_hat(j - k, k)| / |a_k| < 1     (columns)
    (iii) sup_j sum_{k != j} |sigma_hat(j - k, k)| / |a_j| < 1     (rows)

The primed forms compare L^1 norms of full columns of M and of M* with
2 |a_k|. Everything here is sufficient only: a failed condition never
proves that T_sigma is not invertible.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from toruspdo.helper.console import log
from toruspdo.helper.errors import InsufficientDecay, WindowTooSmall
from toruspdo.matrix.assoc import adjoint, build_assoc_matrix, effective_band
from toruspdo.riesz.decay import limit_extrapolate
from toruspdo.symbol.symbol import FourierTable, ToroidalGrid


class InvertibilityVerdict(str, Enum):
    INVERTIBLE = "INVERTIBLE"
    FAILS = "FAILS"
    UNDECIDED = "UNDECIDED"


class ResolventVerdict(str, Enum):
    IN_RESOLVENT = "IN_RESOLVENT"
    UNDECIDED = "UNDECIDED"


class DiscreteSpectrumVerdict(str, Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class InvertibilityResult:
    verdict: InvertibilityVerdict
    n: int
    region: int
    inf_center: float
    sup_ratio_col: float
    sup_ratio_row: float
    conditions: dict
    primed: dict
    discrepancies: tuple[str, ...] = ()
    compact_inverse: bool = False
    failed: tuple[str, ...] = ()
    notes: tuple[str, ...] = field(default=())

    @property
    def sup_ratio(self) -> float:
        return max(self.sup_ratio_col, self.sup_ratio_row)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "n": self.n,
            "region": self.region,
            "inf_center": self.inf_center,
            "sup_ratio_col": self.sup_ratio_col,
            "sup_ratio_row": self.sup_ratio_row,
            "conditions": self.conditions,
            "primed": self.primed,
            "discrepancies": list(self.discrepancies),
            "compact_inverse": self.compact_inverse,
            "failed": list(self.failed),
            "notes": list(self.notes),
        }


# =============================================================================
# OFF-DIAGONAL SUMS
# =============================================================================

def _check_decay(table: FourierTable, decay_tol: float) -> None:
    """The outermost coefficient rows must be negligible, otherwise the sums are cut short."""
    scale = float(np.abs(table.coeffs).max())
    if scale == 0.0 or table.M == 0:
        return
    edge = float(max(np.abs(table.row(table.M)).max(), np.abs(table.row(-table.M)).max()))
    if edge > decay_tol * scale:
        raise InsufficientDecay(
            f"coefficients at |m| = M = {table.M} are {edge / scale:.3e} of the largest; "
            f"off-diagonal sums have not converged in M"
        )


def _sums(table: FourierTable, region: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Centers, column sums and row sums for |k| <= region, using the whole table band."""
    ks = np.arange(-region, region + 1)
    centers = np.array([table.coeff(0, int(k)) for k in ks])
    moduli = np.abs(table.coeffs)
    off = moduli.copy()
    off[table.M] = 0.0
    col = off[:, ks - table.k_start].sum(axis=0)
    row = np.zeros(ks.size)
    for m in table.ms:
        if m == 0:
            continue
        row += off[m + table.M, ks - m - table.k_start]
    return centers, col, row


def _ratio(sums: np.ndarray, centers: np.ndarray) -> float:
    magnitudes = np.abs(centers)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(magnitudes > 0.0, sums / magnitudes, np.where(sums > 0.0, np.inf, 0.0))
    return float(ratios.max())


def _edge_minima(centers: np.ndarray, region: int) -> list[float]:
    """min(|a_w|, |a_-w|) at w = region/4, region/2, region."""
    magnitudes = np.abs(centers)
    return [float(min(magnitudes[region + w], magnitudes[region - w])) for w in (region // 4, region // 2, region)]


def _primed(table: FourierTable, region: int, band_tol: float) -> tuple[dict, int]:
    """(ii') and (iii') from L^1 column norms of M and M* on a window wide enough to be exact."""
    band = min(effective_band(table, band_tol), table.M)
    window = min(table.K, region + band)
    inner = min(region, window - band)
    matrix = build_assoc_matrix(table, window, band_tol)
    star = adjoint(matrix)
    lo, hi = window - inner, window + inner + 1
    centers = np.abs(np.diagonal(matrix.entries))[lo:hi]
    col_l1 = np.abs(matrix.entries).sum(axis=0)[lo:hi]
    star_l1 = np.abs(star.entries).sum(axis=0)[lo:hi]
    return {
        "ii_prime": bool(np.all(col_l1 < 2.0 * centers)),
        "iii_prime": bool(np.all(star_l1 < 2.0 * centers)),
    }, inner


# =============================================================================
# TESTS
# =============================================================================

def invertibility_test(
    table: FourierTable,
    grid: Optional[ToroidalGrid],
    n: int,
    decay_tol: float = 1e-8,
    band_tol: float = 1e-13,
    growth: float = 1.05,
) -> InvertibilityResult:
    """
    Evaluate (i)-(iii) and their primed forms on |k| <= min(n, K - M).

    INVERTIBLE when all three hold and |a_k| does not drift toward 0 at the
    window edge; UNDECIDED when the conditions hold but the edge values of
    |a_k| extrapolate to 0; FAILS when a condition is violated on the window.
    compact_inverse is set for INVERTIBLE operators whose |a_k| keeps growing
    (by the factor growth) across region/4, region/2, region.

    Args:
        table: Fourier table of sigma
        grid: Samples of sigma; when given, a_k is taken as the grid mean
        n: Window radius
        decay_tol: Allowed size of the |m| = M coefficient rows relative to the largest
        band_tol: Band detection threshold for the primed forms
        growth: Factor per doubling counted as growth of |a_k|

    Raises:
        InsufficientDecay: if the edge coefficient rows are not negligible
        WindowTooSmall: if no k has its whole row inside the table
    """
    region = min(n, table.K - table.M)
    if region < 4:
        raise WindowTooSmall(f"window n={n} with M={table.M} and K={table.K} leaves region {region} < 4")
    _check_decay(table, decay_tol)

    centers, col, row = _sums(table, region)
    if grid is not None:
        ks = np.arange(-region, region + 1)
        centers = grid.values[:, ks - grid.k_start].mean(axis=0)

    scale = max(float(np.abs(table.coeffs).max()), 1e-300)
    magnitudes = np.abs(centers)
    inf_center = float(magnitudes.min())
    zero_center = inf_center <= 1e-14 * scale
    minima = _edge_minima(centers, region)
    drifting = not zero_center and abs(limit_extrapolate(minima)) <= 1e-3 * scale and minima[2] < minima[1]

    ratio_col = _ratio(col, centers)
    ratio_row = _ratio(row, centers)
    conditions = {
        "i": not zero_center,
        "ii": ratio_col < 1.0,
        "iii": ratio_row < 1.0,
    }
    primed, primed_region = _primed(table, region, band_tol)
    primed["i_prime"] = conditions["i"]
    discrepancies = []
    for plain, marked in (("ii", "ii_prime"), ("iii", "iii_prime")):
        if conditions[plain] != primed[marked]:
            discrepancies.append(f"({plain}) is {conditions[plain]} but ({marked}) is {primed[marked]}")
    if discrepancies:
        log("SPECTRAL", f"primed and unprimed conditions disagree: {discrepancies}")

    failed = tuple(name for name, ok in conditions.items() if not ok)
    notes = []
    if primed_region < region:
        notes.append(f"primed forms evaluated on |k| <= {primed_region}")
    if failed:
        verdict = InvertibilityVerdict.FAILS
    elif drifting:
        verdict = InvertibilityVerdict.UNDECIDED
        notes.append("|a_k| drifts toward 0 at the window edge; inf over all k may vanish")
    else:
        verdict = InvertibilityVerdict.INVERTIBLE

    compact_inverse = (
        verdict is InvertibilityVerdict.INVERTIBLE
        and minima[1] >= growth * minima[0]
        and minima[2] >= growth * minima[1]
    )
    return InvertibilityResult(
        verdict=verdict,
        n=n,
        region=region,
        inf_center=inf_center,
        sup_ratio_col=ratio_col,
        sup_ratio_row=ratio_row,
        conditions=conditions,
        primed=primed,
        discrepancies=tuple(discrepancies),
        compact_inverse=bool(compact_inverse),
        failed=failed,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class ResolventResult:
    lam: complex
    verdict: ResolventVerdict
    inf_distance: float
    sup_ratio: float
    exclusion_radius: float
    details: InvertibilityResult

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "verdict": self.verdict,
            "inf_distance": self.inf_distance,
            "sup_ratio": self.sup_ratio,
            "exclusion_radius": self.exclusion_radius,
        }


def resolvent_test(table: FourierTable, lam: complex, n: int, decay_tol: float = 1e-8) -> ResolventResult:
    """
    lambda is in the resolvent set when sigma - lambda passes invertibility_test.

    exclusion_radius = (1 - sup_ratio) * inf_k |a_k - lambda| is the distance
    from lambda within which the truncation has no eigenvalue.
    """
    details = invertibility_test(table.shifted(lam), None, n, decay_tol)
    passed = details.verdict is InvertibilityVerdict.INVERTIBLE
    verdict = ResolventVerdict.IN_RESOLVENT if passed else ResolventVerdict.UNDECIDED
    radius = (1.0 - details.sup_ratio) * details.inf_center if passed else 0.0
    return ResolventResult(complex(lam), verdict, details.inf_center, details.sup_ratio, radius, details)


def discrete_spectrum_conditions(table: FourierTable, n: int, decay_tol: float = 1e-8,
                                 growth: float = 1.05) -> dict:
    """
    Hypotheses of the infinite-matrix Gershgorin theorem on the outer half of the window:
    a_k != 0, |a_k| -> infinity, and both off-diagonal ratios below 1 there.

    HOLDS when all are seen on the window, FAILS when the ratios reach 1
    there, UNDECIDED when |a_k| does not visibly grow.
    """
    region = min(n, table.K - table.M)
    if region < 4:
        raise WindowTooSmall(f"window n={n} with M={table.M} and K={table.K} leaves region {region} < 4")
    _check_decay(table, decay_tol)
    centers, col, row = _sums(table, region)
    outer = np.abs(np.arange(-region, region + 1)) >= region // 2
    ratio_col = _ratio(col[outer], centers[outer])
    ratio_row = _ratio(row[outer], centers[outer])
    minima = _edge_minima(centers, region)
    growing = minima[0] > 0.0 and minima[1] >= growth * minima[0] and minima[2] >= growth * minima[1]

    if ratio_col >= 1.0 or ratio_row >= 1.0:
        verdict = DiscreteSpectrumVerdict.FAILS
    elif growing:
        verdict = DiscreteSpectrumVerdict.HOLDS
    else:
        verdict = DiscreteSpectrumVerdict.UNDECIDED
    return {
        "verdict": verdict,
        "region": region,
        "centers_growing": bool(growing),
        "sup_ratio_col": ratio_col,
        "sup_ratio_row": ratio_row,
    }
