"""
toruspdo command line.

Usage:
    toruspdo matrix     --symbol symbols/shift.json --n 8 --format csv
    toruspdo gershgorin --symbol symbols/square_plus_shift.json --n 16 --format csv
    toruspdo eigs       --symbol symbols/square_plus_shift.json --n 16 --lam 0.5,0
    toruspdo norm       --symbol symbols/multiplication.json --n 64 --max-power 32
    toruspdo classify   --symbol symbols/japanese_bracket.json
    toruspdo compose    --symbol symbols/japanese_bracket.json --symbol symbols/shift.json --expansion-order 3
    toruspdo adjoint    --symbol symbols/decaying.json
    toruspdo apply      --symbol symbols/decaying.json --function-expr "cos(x)"
    toruspdo report     --symbol symbols/square_plus_shift.json --n 16 --out out/report.json

Exit codes: 0 success, 1 error or failed cross-check, 2 UNDECIDED verdict
under --strict.
"""
import argparse
import sys
from typing import Optional

from toruspdo import __version__
from toruspdo.cli.commands import CommandOutcome, run_command
from toruspdo.helper.config import COMMANDS, FORMATS, RunConfig, build_run_config
from toruspdo.helper.console import log
from toruspdo.helper.errors import ConfigError, TorusPdoError
from toruspdo.helper.output import dump_json, frame_to_csv
from toruspdo.matrix.dump import header_path

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2

_HELP = {
    "matrix": "Associated matrix on [-n, n] (CSV of j, k, re, im)",
    "gershgorin": "Gershgorin discs of the truncation (plot-ready CSV)",
    "eigs": "Eigenvalues of the truncation, disc containment, resolvent tests",
    "norm": "Operator norm estimates (Crone diagonal / truncation, Schur bound)",
    "classify": "Compactness and Riesz classification from the decay of sup_x|sigma|",
    "compose": "Asymptotic composition of two symbols, checked against the exact product",
    "adjoint": "Asymptotic adjoint symbol, checked against the exact adjoint",
    "apply": "Apply T_sigma to a sampled function",
    "report": "Aggregated spectral report with cross-checks",
}


def parse_lambda(text: str) -> complex:
    """'re,im' or a single real number."""
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ConfigError(f"--lam expects 're,im', got {text!r}")


def parse_windows(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(w) for w in text.split(",") if w.strip())
    except ValueError:
        raise ConfigError(f"--windows expects comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toruspdo",
        description="Numerical toolkit for periodic pseudo-differential operators on the torus",
    )
    parser.add_argument("--version", action="version", version=f"toruspdo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    for command in COMMANDS:
        p = sub.add_parser(command, help=_HELP[command])
        p.add_argument("--symbol", action="append", dest="symbol_paths", required=True,
                       help="Symbol spec file (JSON); give twice for compose")
        p.add_argument("--n", type=int, help="Truncation window radius (default 32)")
        p.add_argument("--K", type=int, help="Symbol k window (default 64)")
        p.add_argument("--Q", type=int, help="x resolution, a power of two (default 1024)")
        p.add_argument("--M", type=int, help="Fourier coefficient band (default 32)")
        p.add_argument("--expansion-order", type=int, dest="N", help="Asymptotic expansion order N (default 4)")
        p.add_argument("--max-power", type=int, dest="max_power", help="Powers for the diagonal norm (default 16)")
        p.add_argument("--tol-decay", type=float, dest="tol_decay", help="Tail threshold for classification")
        p.add_argument("--out", dest="output", help="Output path (default: stdout)")
        p.add_argument("--format", choices=FORMATS, help="json (default) or csv")
        p.add_argument("--strict", action="store_true", default=None,
                       help=f"Exit with {EXIT_UNDECIDED} when a verdict is UNDECIDED")
        p.add_argument("--config", dest="config_path", help="JSON config file")
        p.add_argument("--lam", action="append", dest="lam_texts", metavar="RE,IM",
                       help="Resolvent test point (repeatable)")
        p.add_argument("--function", dest="function_path", help="Function CSV (q, re, im) for apply")
        p.add_argument("--function-expr", dest="function_expr", help="Function of x for apply")
        p.add_argument("--windows", dest="windows_text", help="Comma-separated n values for the norm sweep")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    flags = {
        key: value for key, value in vars(args).items()
        if key not in ("command", "config_path", "lam_texts", "windows_text")
    }
    if args.lam_texts:
        flags["lambdas"] = [parse_lambda(t) for t in args.lam_texts]
    if args.windows_text:
        flags["windows"] = parse_windows(args.windows_text)
    return build_run_config(args.command, flags, args.config_path)


def write_outcome(outcome: CommandOutcome, config: RunConfig) -> None:
    """CSV when asked for and the command has a table, JSON otherwise; stdout without --out."""
    if config.format == "csv" and outcome.frame is not None:
        text = frame_to_csv(outcome.frame, config.output)
        if config.output is not None and outcome.csv_header is not None:
            dump_json(outcome.csv_header, header_path(config.output))
    else:
        text = dump_json(outcome.data, config.output)
    if config.output is None:
        sys.stdout.write(text)
    else:
        log("CLI", f"wrote {config.output}")


def exit_code(outcome: CommandOutcome, config: RunConfig) -> int:
    if outcome.failed:
        return EXIT_ERROR
    if outcome.undecided and config.strict:
        return EXIT_UNDECIDED
    return EXIT_OK


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)
        outcome = run_command(config)
        write_outcome(outcome, config)
    except TorusPdoError as e:
        print(f"[ERROR] {e.code}: {e}", file=sys.stderr)
        return EXIT_ERROR

    if outcome.failed:
        log("CLI", f"{config.command}: cross-checks failed")
    elif outcome.undecided:
        log("CLI", f"{config.command}: UNDECIDED verdict")
    return exit_code(outcome, config)


if __name__ == "__main__":
    sys.exit(main())
