"""
Compact / Riesz classification from the decay of sup_x |sigma(x, k)|.

An operator with d_sigma = 0 is compact on L^2 and Riesz on L^p; the same
tail value bounds the distance to the compact operators from below. The
limit is only extrapolated, so every verdict is three-valued.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np
import scipy.linalg

from toruspdo.calculus.expansion import symbol_power
from toruspdo.helper.console import log
from toruspdo.riesz.decay import DecayProfile, Trend, decay_profile, limit_extrapolate
from toruspdo.riesz.mikhlin import MikhlinResult, mikhlin_check
from toruspdo.symbol.symbol import Symbol, ToroidalGrid, sample_symbol


MIN_DOUBLING_K = 16


class Verdict(str, Enum):
    YES = "YES"
    NO = "NO"
    UNDECIDED = "UNDECIDED"


@dataclass(frozen=True, eq=False)
class Classification:
    compact_L2: Verdict
    riesz_Lp: Verdict
    bounded_multiplier: Optional[Verdict]
    gohberg_bound: float
    tail_estimate: float
    extrapolated_limit: float
    trend: Trend
    profiles: tuple[DecayProfile, ...]
    mikhlin: Optional[MikhlinResult] = None
    notes: tuple[str, ...] = field(default=())

    @property
    def undecided(self) -> bool:
        return Verdict.UNDECIDED in (self.compact_L2, self.riesz_Lp, self.bounded_multiplier)

    def to_dict(self) -> dict:
        return {
            "d_sigma_tail": self.tail_estimate,
            "extrapolated_limit": self.extrapolated_limit,
            "trend": self.trend,
            "windows": [p.K for p in self.profiles],
            "tails": [p.tail_estimate for p in self.profiles],
            "trends": [p.trend for p in self.profiles],
            "compact_L2": self.compact_L2,
            "riesz_Lp": self.riesz_Lp,
            "bounded_multiplier": self.bounded_multiplier,
            "gohberg_lower_bound": self.gohberg_bound,
            "mikhlin": None if self.mikhlin is None else self.mikhlin.to_dict(),
            "notes": list(self.notes),
        }


def classify_grid(grid: ToroidalGrid, W: int = 0, tol_decay: float = 1e-3,
                  notes: tuple[str, ...] = ()) -> Classification:
    """
    Classify a sampled symbol on the windows K/4, K/2, K (K = grid.K).

    YES: the extrapolated tail is below tol_decay and every window trends
    DECREASING (or the tail vanishes). NO: the last window is FLAT or
    INCREASING with a tail of at least tol_decay. UNDECIDED otherwise.

    Windows with K < 16 have no room for the doublings; they are profiled
    once on |k| <= K and classified UNDECIDED.

    Raises:
        WindowTooSmall: if K < 4 or W >= K (no decay profile)
    """
    K = grid.K
    if K < MIN_DOUBLING_K:
        profile = decay_profile(grid.restrict(-K, K), W)
        log("RIESZ", f"window K={K} is below {MIN_DOUBLING_K}; classification left UNDECIDED")
        return Classification(
            compact_L2=Verdict.UNDECIDED,
            riesz_Lp=Verdict.UNDECIDED,
            bounded_multiplier=None,
            gohberg_bound=profile.tail_estimate,
            tail_estimate=profile.tail_estimate,
            extrapolated_limit=profile.tail_estimate,
            trend=profile.trend,
            profiles=(profile,),
            notes=tuple(notes) + (f"window K={K} < {MIN_DOUBLING_K}: no doubling windows, tail not extrapolated",),
        )
    windows = (K // 4, K // 2, K)
    profiles = tuple(decay_profile(grid.restrict(-w, w), W) for w in windows)
    tails = [p.tail_estimate for p in profiles]
    limit = float(abs(limit_extrapolate(tails)))

    decaying = all(p.trend is Trend.DECREASING or p.tail_estimate == 0.0 for p in profiles)
    last = profiles[-1]
    if limit < tol_decay and decaying:
        verdict = Verdict.YES
    elif last.trend in (Trend.FLAT, Trend.INCREASING) and last.tail_estimate >= tol_decay:
        verdict = Verdict.NO
    else:
        verdict = Verdict.UNDECIDED

    return Classification(
        compact_L2=verdict,
        # compact operators are Riesz, and the criterion on L^p uses the same tail
        riesz_Lp=verdict,
        bounded_multiplier=None,
        gohberg_bound=last.tail_estimate,
        tail_estimate=last.tail_estimate,
        extrapolated_limit=limit,
        trend=last.trend,
        profiles=profiles,
        notes=tuple(notes),
    )


def classify(sym: Symbol, K: Optional[int] = None, Q: Optional[int] = None, W: int = 0,
             tol_decay: float = 1e-3) -> Classification:
    """
    Classify T_sigma as compact on L^2 / Riesz on L^p.

    Fourier multipliers additionally get a bounded_multiplier verdict from
    mikhlin_check. Caveats carried by the symbol are copied to the notes.

    Args:
        sym: Symbol to classify
        K: Window (default: the symbol's own)
        Q: x resolution (default: the symbol's own)
        W: Tail band width of the decay profile
        tol_decay: Threshold below which the tail counts as zero

    Returns:
        Classification
    """
    K = sym.k_window if K is None else K
    Q = sym.x_resolution if Q is None else Q
    grid = sample_symbol(sym, Q, K)
    result = classify_grid(grid, W, tol_decay, sym.notes)

    if sym.is_multiplier:
        mikhlin = mikhlin_check(sym, K)
        result = Classification(
            compact_L2=result.compact_L2,
            riesz_Lp=result.riesz_Lp,
            bounded_multiplier=Verdict.YES if mikhlin.passed else Verdict.NO,
            gohberg_bound=result.gohberg_bound,
            tail_estimate=result.tail_estimate,
            extrapolated_limit=result.extrapolated_limit,
            trend=result.trend,
            profiles=result.profiles,
            mikhlin=mikhlin,
            notes=result.notes,
        )
    if result.compact_L2 is Verdict.UNDECIDED:
        log("RIESZ", f"{sym.name}: compactness UNDECIDED (tail {result.tail_estimate:.3e}, trend {result.trend.value})")
    return result


# =============================================================================
# CROSS-CHECKS
# =============================================================================

def best_rank_distance(matrix, max_rank: Optional[int] = None) -> np.ndarray:
    """
    Distance from a matrix to the nearest matrix of rank r, r = 0..max_rank.

    Eckart-Young: the distance in operator norm is the (r+1)-th singular value.
    Accepts an AssocMatrix or a plain 2-D array.
    """
    entries = getattr(matrix, "entries", matrix)
    singular = scipy.linalg.svdvals(np.asarray(entries))
    if max_rank is None:
        max_rank = singular.size - 1
    return singular[:max_rank + 1].copy()


@dataclass(frozen=True, eq=False)
class PowerConsistency:
    power: int
    agree: bool
    base: Classification
    composed: Classification

    def to_dict(self) -> dict:
        return {
            "power": self.power,
            "agree": self.agree,
            "base": {"compact_L2": self.base.compact_L2, "trend": self.base.trend},
            "composed": {"compact_L2": self.composed.compact_L2, "trend": self.composed.trend},
        }


def power_consistency(sym: Symbol, power: int = 2, N: int = 4, tol_decay: float = 1e-3) -> PowerConsistency:
    """
    Classify sigma and the symbol of T_sigma^power; the tails vanish together,
    so the YES/NO verdicts and trends should agree.
    """
    base = classify(sym, tol_decay=tol_decay)
    expansion = symbol_power(sym, power, N)
    composed = classify_grid(expansion.symbol_grid, tol_decay=tol_decay)
    agree = base.compact_L2 == composed.compact_L2 and base.trend == composed.trend
    if not agree:
        log("RIESZ", f"{sym.name}: power {power} classification disagrees "
                     f"({base.compact_L2.value}/{base.trend.value} vs "
                     f"{composed.compact_L2.value}/{composed.trend.value})")
    return PowerConsistency(power=power, agree=agree, base=base, composed=composed)
