"""
Aggregated spectral report: discs, truncated eigenvalues, norm estimates,
invertibility / resolvent verdicts, classification and the cross-checks
that tie them together.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
import pandas as pd

from toruspdo.helper.console import log
from toruspdo.helper.errors import TorusPdoError
from toruspdo.helper.output import frame_to_csv
from toruspdo.matrix.assoc import AssocMatrix, build_assoc_matrix
from toruspdo.riesz.classify import Classification, classify
from toruspdo.spectral.eigen import DENSE_LIMIT, eigensolve_truncated
from toruspdo.spectral.gershgorin import GershgorinDisc, disc_union_report, discs_from_matrix
from toruspdo.spectral.invertibility import (
    InvertibilityResult,
    ResolventResult,
    ResolventVerdict,
    invertibility_test,
    resolvent_test,
)
from toruspdo.spectral.norms import NormEstimate, crone_norm_diagonal, crone_norm_truncation, gram_sweep, schur_bound
from toruspdo.symbol.symbol import Symbol, fourier_table, sample_symbol

SLACK = 1e-8


@dataclass(frozen=True, eq=False)
class SpectralReport:
    name: str
    matrix: AssocMatrix
    discs: list[GershgorinDisc]
    eigenvalues: np.ndarray
    norm: NormEstimate
    schur: float
    diagonal_norm: Optional[NormEstimate] = None
    invertibility: Optional[InvertibilityResult] = None
    resolvent_tests: tuple[ResolventResult, ...] = ()
    classification: Optional[Classification] = None
    containment: dict = field(default_factory=dict)
    cross_checks: dict = field(default_factory=dict)
    skipped: dict = field(default_factory=dict)
    window: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True unless some cross-check failed (skipped checks do not count)."""
        return all(value is not False for value in self.cross_checks.values())

    def to_dict(self) -> dict:
        return {
            "symbol": self.name,
            "window": self.window,
            "discs": [d.to_dict() for d in self.discs],
            "eigenvalues": list(self.eigenvalues),
            "norm": {
                "truncation": self.norm.to_dict(),
                "diagonal": None if self.diagonal_norm is None else self.diagonal_norm.to_dict(),
                "schur_bound": self.schur,
                "schur_bound_squared": self.schur * self.schur,
            },
            "verdicts": {
                "invertibility": None if self.invertibility is None else self.invertibility.to_dict(),
                "resolvent": [r.to_dict() for r in self.resolvent_tests],
                "classification": None if self.classification is None else self.classification.to_dict(),
            },
            "containment": self.containment,
            "cross_checks": self.cross_checks,
            "skipped": self.skipped,
            "passed": self.passed,
        }


def discs_frame(discs: list[GershgorinDisc]) -> pd.DataFrame:
    return pd.DataFrame({
        "k": [d.k for d in discs],
        "center_re": [d.center.real for d in discs],
        "center_im": [d.center.imag for d in discs],
        "r_row": [d.radius_row for d in discs],
        "r_col": [d.radius_col for d in discs],
    })


def write_discs_csv(discs: list[GershgorinDisc], path: Optional[str] = None) -> str:
    """One disc per line, plot-ready."""
    return frame_to_csv(discs_frame(discs), path)


def spectral_report_to_dict(report: SpectralReport) -> dict:
    return report.to_dict()


def sweep_windows(n: int) -> list[int]:
    """n/8, n/4, n/2, n (distinct, positive)."""
    return sorted({w for w in (n // 8, n // 4, n // 2, n) if w >= 1} | {n})


def _norm_sandwich(diagonal: Optional[NormEstimate], truncation: NormEstimate, schur: float) -> Optional[bool]:
    top = truncation.estimate
    ok = top <= schur * schur * (1.0 + SLACK) + SLACK
    if diagonal is not None:
        ok = ok and diagonal.lower <= top * (1.0 + SLACK) + SLACK
    return bool(ok)


def _resolvent_exclusion(tests, eigenvalues: np.ndarray) -> Optional[bool]:
    checked = [t for t in tests if t.verdict is ResolventVerdict.IN_RESOLVENT]
    if not checked or eigenvalues.size == 0:
        return None
    return all(float(np.abs(eigenvalues - t.lam).min()) >= t.exclusion_radius - SLACK for t in checked)


def build_spectral_report(
    sym: Symbol,
    n: int,
    K: int,
    Q: int,
    M: int,
    max_power: int = 16,
    tol_rel: float = 1e-3,
    tol_decay: float = 1e-3,
    band_tol: float = 1e-13,
    lambdas=(),
    dense_limit: int = DENSE_LIMIT,
) -> SpectralReport:
    """
    Run discs, eigenvalues, norms, invertibility, resolvent tests and
    classification on one window and cross-validate them.

    Analyses whose preconditions fail on this window (too few powers fit,
    coefficients not decayed, window too small to classify) are recorded
    under skipped; the errors of the core steps propagate.
    """
    grid = sample_symbol(sym, Q, K)
    table = fourier_table(grid, M)
    matrix = build_assoc_matrix(table, n, band_tol)
    discs = discs_from_matrix(matrix)
    eigenvalues = eigensolve_truncated(matrix, dense_limit)
    containment = disc_union_report(discs, eigenvalues, SLACK)
    schur = schur_bound(matrix)
    truncation = crone_norm_truncation(gram_sweep(table, grid, sweep_windows(n)), tol_rel, upper=schur * schur)

    skipped = {}

    def guarded(label, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except TorusPdoError as e:
            skipped[label] = f"{e.code}: {e}"
            log("REPORT", f"{sym.name}: {label} skipped ({e.code})")
            return None

    diagonal = guarded("diagonal_norm", crone_norm_diagonal, matrix, max_power)
    invertibility = guarded("invertibility", invertibility_test, table, grid, n)
    resolvent = []
    for lam in lambdas:
        result = guarded(f"resolvent {complex(lam)}", resolvent_test, table, complex(lam), n)
        if result is not None:
            resolvent.append(result)
    classification = guarded("classification", classify, sym, K, Q, 0, tol_decay)

    cross_checks = {
        "eigenvalues_in_discs": bool(containment["all_contained"]),
        "disc_multiplicities": bool(containment["ok"]) if containment["multiplicity_claims"] else None,
        "norm_sandwich": _norm_sandwich(diagonal, truncation, schur),
        "resolvent_exclusion": _resolvent_exclusion(resolvent, eigenvalues),
    }
    failed = [name for name, ok in cross_checks.items() if ok is False]
    if failed:
        log("REPORT", f"{sym.name}: cross-checks failed: {failed}")

    return SpectralReport(
        name=sym.name,
        matrix=matrix,
        discs=discs,
        eigenvalues=eigenvalues,
        norm=truncation,
        schur=schur,
        diagonal_norm=diagonal,
        invertibility=invertibility,
        resolvent_tests=tuple(resolvent),
        classification=classification,
        containment=containment,
        cross_checks=cross_checks,
        skipped=skipped,
        window={"n": n, "K": K, "Q": Q, "M": M, "band": matrix.band, "trusted_radius": matrix.trusted_radius},
    )
