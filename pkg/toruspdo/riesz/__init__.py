"""Symbol decay, Mikhlin condition and compact / Riesz classification."""
from toruspdo.riesz.decay import Trend, DecayProfile, decay_profile, limit_extrapolate
from toruspdo.riesz.mikhlin import MikhlinResult, mikhlin_check, mikhlin_constant, multiplier_values
from toruspdo.riesz.classify import (
    Verdict,
    Classification,
    PowerConsistency,
    classify,
    classify_grid,
    best_rank_distance,
    power_consistency,
)

__all__ = [
    "Trend",
    "DecayProfile",
    "decay_profile",
    "limit_extrapolate",
    "MikhlinResult",
    "mikhlin_check",
    "mikhlin_constant",
    "multiplier_values",
    "Verdict",
    "Classification",
    "PowerConsistency",
    "classify",
    "classify_grid",
    "best_rank_distance",
    "power_consistency",
]
