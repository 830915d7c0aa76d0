"""Gershgorin localization, invertibility, norm estimates, eigenvalues and reports."""
from toruspdo.spectral.gershgorin import GershgorinDisc, gershgorin_discs, discs_from_matrix, disc_union_report
from toruspdo.spectral.invertibility import (
    InvertibilityVerdict,
    ResolventVerdict,
    DiscreteSpectrumVerdict,
    InvertibilityResult,
    ResolventResult,
    invertibility_test,
    resolvent_test,
    discrete_spectrum_conditions,
)
from toruspdo.spectral.norms import (
    NormMethod,
    NormEstimate,
    schur_bound,
    crone_norm_diagonal,
    crone_norm_truncation,
    gram_sweep,
)
from toruspdo.spectral.eigen import (
    DENSE_LIMIT,
    MultiplierSpectrum,
    eigensolve_truncated,
    multiplier_spectrum,
    sort_eigenvalues,
)
from toruspdo.spectral.report import (
    SpectralReport,
    build_spectral_report,
    spectral_report_to_dict,
    write_discs_csv,
    discs_frame,
)

__all__ = [
    "GershgorinDisc",
    "gershgorin_discs",
    "discs_from_matrix",
    "disc_union_report",
    "InvertibilityVerdict",
    "ResolventVerdict",
    "DiscreteSpectrumVerdict",
    "InvertibilityResult",
    "ResolventResult",
    "invertibility_test",
    "resolvent_test",
    "discrete_spectrum_conditions",
    "NormMethod",
    "NormEstimate",
    "schur_bound",
    "crone_norm_diagonal",
    "crone_norm_truncation",
    "gram_sweep",
    "DENSE_LIMIT",
    "MultiplierSpectrum",
    "eigensolve_truncated",
    "multiplier_spectrum",
    "sort_eigenvalues",
    "SpectralReport",
    "build_spectral_report",
    "spectral_report_to_dict",
    "write_discs_csv",
    "discs_frame",
]
