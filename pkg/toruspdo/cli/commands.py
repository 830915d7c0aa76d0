"""
Subcommand bodies.

Each command takes a validated RunConfig and returns a CommandOutcome: the
JSON payload, the plot-ready table used for --format csv, and the flags
that decide the exit code. Nothing here writes files or touches stdout.
"""
from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np
import pandas as pd

from toruspdo.calculus.exact import compose_exact_matrix, symbol_from_matrix
from toruspdo.calculus.expansion import adjoint_asymptotic, compose_asymptotic
from toruspdo.helper.config import RunConfig
from toruspdo.helper.console import log
from toruspdo.helper.errors import ConfigError, TorusPdoError
from toruspdo.matrix.assoc import AssocMatrix, adjoint, build_assoc_matrix
from toruspdo.matrix.dump import matrix_frame, matrix_header
from toruspdo.operator.apply import (
    PeriodicFunction,
    apply_operator,
    function_frame,
    matrix_consistency_residual,
    read_function_csv,
)
from toruspdo.riesz.classify import classify
from toruspdo.spectral.eigen import eigensolve_truncated, multiplier_spectrum
from toruspdo.spectral.gershgorin import disc_union_report, discs_from_matrix
from toruspdo.spectral.invertibility import InvertibilityVerdict, ResolventVerdict, resolvent_test
from toruspdo.spectral.norms import crone_norm_diagonal, crone_norm_truncation, gram_sweep, schur_bound
from toruspdo.spectral.report import build_spectral_report, discs_frame, sweep_windows
from toruspdo.symbol.symbol import FourierTable, Symbol, ToroidalGrid, fourier_table, sample_symbol
from toruspdo.symbol.symbol_file import grid_frame, load_symbol_file


@dataclass(frozen=True, eq=False)
class CommandOutcome:
    data: dict
    frame: Optional[pd.DataFrame] = None
    csv_header: Optional[dict] = None
    undecided: bool = False
    failed: bool = False


# =============================================================================
# SHARED STEPS
# =============================================================================

def load_symbols(config: RunConfig) -> list[Symbol]:
    return [load_symbol_file(path, Q=config.Q, K=config.K) for path in config.symbol_paths]


def effective_config(config: RunConfig, sym: Symbol) -> RunConfig:
    """
    The run window for sym: a symbol file that fixes Q or K wins over the
    run defaults, and the window is checked again with those values.
    """
    if (sym.x_resolution, sym.k_window) == (config.Q, config.K):
        return config
    log("CLI", f"{sym.name}: using the file window Q={sym.x_resolution}, K={sym.k_window}")
    return replace(config, Q=sym.x_resolution, K=sym.k_window).validate()


def _table(sym: Symbol, config: RunConfig) -> tuple[ToroidalGrid, FourierTable]:
    grid = sample_symbol(sym, config.Q, config.K)
    return grid, fourier_table(grid, config.M)


def _matrix(sym: Symbol, config: RunConfig) -> tuple[ToroidalGrid, FourierTable, AssocMatrix]:
    grid, table = _table(sym, config)
    return grid, table, build_assoc_matrix(table, config.n, config.band_tol)


def _guarded(skipped: dict, label: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except TorusPdoError as e:
        skipped[label] = f"{e.code}: {e}"
        log("CLI", f"{label} skipped ({e.code})")
        return None


def _eigen_frame(values: np.ndarray) -> pd.DataFrame:
    return pd.DataFrame({"index": np.arange(values.size), "re": values.real, "im": values.imag})


def _sup_gap(asymptotic: ToroidalGrid, exact: ToroidalGrid) -> dict:
    """Sup |asymptotic - exact| on the k values both grids cover."""
    lo = max(asymptotic.k_start, exact.k_start)
    hi = min(asymptotic.k_stop, exact.k_stop)
    if hi < lo or asymptotic.Q != exact.Q:
        return {"k_window": None, "sup_error": None}
    gap = asymptotic.restrict(lo, hi).values - exact.restrict(lo, hi).values
    return {"k_window": [lo, hi], "sup_error": float(np.abs(gap).max())}


# =============================================================================
# COMMANDS
# =============================================================================

def run_matrix(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    _, _, matrix = _matrix(sym, config)
    header = matrix_header(matrix, sym.name)
    return CommandOutcome(
        data={"symbol": sym.name, "header": header, "indices": matrix.indices, "entries": matrix.entries},
        frame=matrix_frame(matrix),
        csv_header=header,
    )


def run_gershgorin(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    _, _, matrix = _matrix(sym, config)
    discs = discs_from_matrix(matrix)
    union = disc_union_report(discs, [])
    return CommandOutcome(
        data={
            "symbol": sym.name,
            "n": config.n,
            "discs": [d.to_dict() for d in discs],
            "component_count": union["component_count"],
            "components": [{"ks": c["ks"], "size": c["size"]} for c in union["components"]],
        },
        frame=discs_frame(discs),
    )


def run_eigs(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    _, table, matrix = _matrix(sym, config)
    values = eigensolve_truncated(matrix, config.dense_limit)
    skipped: dict = {}
    data = {"symbol": sym.name, "n": config.n, "eigenvalues": values}

    containment = disc_union_report(discs_from_matrix(matrix), values)
    data["containment"] = containment
    if sym.is_multiplier:
        spectrum = _guarded(skipped, "multiplier_spectrum", multiplier_spectrum, sym, config.K)
        data["multiplier_spectrum"] = None if spectrum is None else spectrum.to_dict()

    resolvent = []
    for lam in config.lambdas:
        result = _guarded(skipped, f"resolvent {complex(lam)}", resolvent_test, table, complex(lam), config.n)
        if result is not None:
            resolvent.append(result)
    data["resolvent"] = [r.to_dict() for r in resolvent]
    data["skipped"] = skipped
    return CommandOutcome(
        data=data,
        frame=_eigen_frame(values),
        undecided=any(r.verdict is ResolventVerdict.UNDECIDED for r in resolvent),
        failed=not containment["all_contained"],
    )


def run_norm(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    grid, table, matrix = _matrix(sym, config)
    schur = schur_bound(matrix)
    windows = list(config.windows) or sweep_windows(config.n)
    truncation = crone_norm_truncation(gram_sweep(table, grid, windows), config.tol_rel, upper=schur * schur)
    skipped: dict = {}
    diagonal = _guarded(skipped, "diagonal_norm", crone_norm_diagonal, matrix, config.max_power)

    rows = [("truncation", n, value) for n, value in truncation.per_n]
    if diagonal is not None:
        rows += [("diagonal", p, value) for p, value in diagonal.per_n]
    frame = pd.DataFrame(rows, columns=["method", "n", "norm_squared"])
    return CommandOutcome(
        data={
            "symbol": sym.name,
            "truncation": truncation.to_dict(),
            "diagonal": None if diagonal is None else diagonal.to_dict(),
            "schur_bound": schur,
            "schur_bound_squared": schur * schur,
            "norm_estimate": float(np.sqrt(max(truncation.estimate, 0.0))),
            "skipped": skipped,
        },
        frame=frame,
        undecided=not truncation.converged,
    )


def run_classify(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    result = classify(sym, config.K, config.Q, 0, config.tol_decay)
    last = result.profiles[-1]
    frame = pd.DataFrame({"k": last.ks, "sup_abs": last.per_k})
    data = {"symbol": sym.name}
    data.update(result.to_dict())
    return CommandOutcome(data=data, frame=frame, undecided=result.undecided)


def run_compose(config: RunConfig) -> CommandOutcome:
    alpha, beta = load_symbols(config)
    config = effective_config(config, alpha)
    expansion = compose_asymptotic(alpha, beta, config.N, config.Q, config.K)

    skipped: dict = {}
    exact = _guarded(skipped, "exact", compose_exact_matrix, alpha, beta, config.n, config.M, config.Q)
    check = None
    if exact is not None:
        exact_grid = _guarded(skipped, "exact_symbol", symbol_from_matrix, exact, config.Q)
        if exact_grid is not None:
            check = _sup_gap(expansion.symbol_grid, exact_grid)
            check["trusted_radius"] = exact.trusted_radius
    data = {"symbols": [alpha.name, beta.name], "expansion": expansion.to_dict(), "exact_check": check,
            "skipped": skipped}
    return CommandOutcome(data=data, frame=grid_frame(expansion.symbol_grid))


def run_adjoint(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    expansion = adjoint_asymptotic(sym, config.N, config.Q, config.K)

    skipped: dict = {}
    check = None
    _, _, matrix = _matrix(sym, config)
    exact_grid = _guarded(skipped, "exact_symbol", symbol_from_matrix, adjoint(matrix), config.Q)
    if exact_grid is not None:
        check = _sup_gap(expansion.symbol_grid, exact_grid)
    data = {"symbol": sym.name, "expansion": expansion.to_dict(), "exact_check": check, "skipped": skipped}
    return CommandOutcome(data=data, frame=grid_frame(expansion.symbol_grid))


def _input_function(config: RunConfig) -> PeriodicFunction:
    if (config.function_path is None) == (config.function_expr is None):
        raise ConfigError("apply needs exactly one of --function or --function-expr")
    if config.function_path is not None:
        return read_function_csv(config.function_path)
    return PeriodicFunction.from_expression(config.function_expr, config.Q)


def run_apply(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    f = _input_function(config)
    if f.Q != config.Q:
        raise ConfigError(f"function has Q={f.Q} samples but the run uses Q={config.Q}")
    result = apply_operator(sym, f, config.n)

    skipped: dict = {}
    M = min(config.M, (config.Q - 1) // 2 - config.n)
    residual = _guarded(skipped, "matrix_consistency", matrix_consistency_residual, sym, f, config.n, M,
                        config.band_tol)
    return CommandOutcome(
        data={
            "symbol": sym.name,
            "Q": result.Q,
            "n": config.n,
            "input_truncated": result.truncated,
            "matrix_consistency_residual": residual,
            "samples": result.samples,
            "skipped": skipped,
        },
        frame=function_frame(result),
    )


def run_report(config: RunConfig) -> CommandOutcome:
    sym = load_symbols(config)[0]
    config = effective_config(config, sym)
    report = build_spectral_report(
        sym,
        config.n,
        config.K,
        config.Q,
        config.M,
        max_power=config.max_power,
        tol_rel=config.tol_rel,
        tol_decay=config.tol_decay,
        band_tol=config.band_tol,
        lambdas=config.lambdas,
        dense_limit=config.dense_limit,
    )
    undecided = (
        (report.classification is not None and report.classification.undecided)
        or (report.invertibility is not None and report.invertibility.verdict is InvertibilityVerdict.UNDECIDED)
        or any(r.verdict is ResolventVerdict.UNDECIDED for r in report.resolvent_tests)
    )
    return CommandOutcome(
        data=report.to_dict(),
        frame=discs_frame(report.discs),
        undecided=bool(undecided),
        failed=not report.passed,
    )


COMMAND_RUNNERS: dict[str, Callable[[RunConfig], CommandOutcome]] = {
    "matrix": run_matrix,
    "gershgorin": run_gershgorin,
    "eigs": run_eigs,
    "norm": run_norm,
    "classify": run_classify,
    "compose": run_compose,
    "adjoint": run_adjoint,
    "apply": run_apply,
    "report": run_report,
}


def run_command(config: RunConfig) -> CommandOutcome:
    return COMMAND_RUNNERS[config.command](config)
