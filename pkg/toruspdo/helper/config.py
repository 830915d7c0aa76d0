"""
Run configuration.

Precedence, lowest to highest: built-in defaults, environment (.env is loaded
with python-dotenv), JSON config file, command-line flags.
"""
import json
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Optional

from dotenv import load_dotenv

from toruspdo.helper.errors import ConfigError

COMMANDS = ("matrix", "gershgorin", "eigs", "norm", "classify", "compose", "adjoint", "apply", "report")
FORMATS = ("json", "csv")


def is_power_of_two(value: int) -> bool:
    return value >= 1 and (value & (value - 1)) == 0


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs; validated before any compute."""

    command: str = "report"
    symbol_paths: tuple[str, ...] = ()
    n: int = 32
    K: int = 64
    Q: int = 1024
    M: int = 32
    N: int = 4
    max_power: int = 16
    tolerances: dict = field(default_factory=lambda: {
        "tol_decay": 1e-3,
        "tol_rel": 1e-3,
        "band_tol": 1e-13,
    })
    dense_limit: int = 2049
    output: Optional[str] = None
    format: str = "json"
    strict: bool = False
    lambdas: tuple[complex, ...] = ()
    function_path: Optional[str] = None
    function_expr: Optional[str] = None
    windows: tuple[int, ...] = ()

    @property
    def tol_decay(self) -> float:
        return float(self.tolerances["tol_decay"])

    @property
    def tol_rel(self) -> float:
        return float(self.tolerances["tol_rel"])

    @property
    def band_tol(self) -> float:
        return float(self.tolerances["band_tol"])

    def validate(self) -> "RunConfig":
        """
        Check window coherence.

        Raises:
            ConfigError: on any incoherent window or unknown option value
        """
        if self.command not in COMMANDS:
            raise ConfigError(f"Unknown command {self.command!r}; expected one of {COMMANDS}")
        if self.format not in FORMATS:
            raise ConfigError(f"Unknown format {self.format!r}; expected json or csv")
        if not is_power_of_two(self.Q):
            raise ConfigError(f"Q={self.Q} must be a power of two")
        if self.K < 1:
            raise ConfigError(f"K={self.K} must be at least 1")
        if self.n < 0 or self.n > self.K:
            raise ConfigError(f"n={self.n} must lie in [0, K={self.K}]")
        if self.M < 0 or 2 * self.M + 1 > self.Q:
            raise ConfigError(f"M={self.M} needs 2M+1 <= Q={self.Q}")
        if self.Q < 2 * (self.M + self.n) + 1:
            raise ConfigError(
                f"Q={self.Q} too small for M={self.M}, n={self.n}: need Q >= 2(M+n)+1 = {2 * (self.M + self.n) + 1}"
            )
        if not 1 <= self.N <= 20:
            raise ConfigError(f"expansion order N={self.N} must lie in [1, 20]")
        if self.max_power < 1:
            raise ConfigError(f"max_power={self.max_power} must be at least 1")
        if self.tol_decay <= 0 or self.tol_rel <= 0:
            raise ConfigError("tolerances must be positive")
        if self.command == "compose" and len(self.symbol_paths) != 2:
            raise ConfigError("compose needs exactly two --symbol files")
        if self.command != "compose" and len(self.symbol_paths) != 1:
            raise ConfigError(f"{self.command} needs exactly one --symbol file")
        bad = [w for w in self.windows if not 1 <= w <= self.n]
        if bad:
            raise ConfigError(f"norm windows {bad} must lie in [1, n={self.n}]")
        return self


_INT_KEYS = {"n", "K", "Q", "M", "N", "max_power", "dense_limit"}
_TOL_KEYS = {"tol_decay", "tol_rel", "band_tol"}


def _env_overrides() -> dict:
    load_dotenv()
    overrides: dict[str, Any] = {}
    dense_limit = os.getenv("TORUSPDO_DENSE_LIMIT")
    if dense_limit:
        try:
            overrides["dense_limit"] = int(dense_limit)
        except ValueError:
            raise ConfigError(f"TORUSPDO_DENSE_LIMIT={dense_limit!r} is not an integer")
    return overrides


def _file_overrides(config_path: Optional[str]) -> dict:
    if not config_path:
        return {}
    if not os.path.exists(config_path):
        raise ConfigError(f"Config file not found: {config_path}")
    with open(config_path, "r", encoding="utf-8") as f:
        try:
            payload = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {config_path} is not valid JSON: {e}")
    if not isinstance(payload, dict):
        raise ConfigError(f"Config file {config_path} must hold a JSON object")
    unknown = sorted(set(payload) - _INT_KEYS - _TOL_KEYS - {"format", "strict"})
    if unknown:
        raise ConfigError(f"Unknown config keys in {config_path}: {unknown}")
    return payload


def build_run_config(
    command: str,
    flags: dict,
    config_path: Optional[str] = None,
) -> RunConfig:
    """
    Merge defaults, environment, config file and flags into a RunConfig.

    Args:
        command: Subcommand name
        flags: Flag values; None entries mean "not given on the command line"
        config_path: Optional JSON config file

    Returns:
        Validated RunConfig
    """
    config = RunConfig(command=command)
    tolerances = dict(config.tolerances)
    merged: dict[str, Any] = {}
    for layer in (_env_overrides(), _file_overrides(config_path), flags):
        for key, value in layer.items():
            if value is None:
                continue
            if key in _TOL_KEYS:
                tolerances[key] = float(value)
            else:
                merged[key] = value

    known = {f.name for f in fields(RunConfig)}
    unexpected = sorted(set(merged) - known)
    if unexpected:
        raise ConfigError(f"Unknown options: {unexpected}")
    for key in _INT_KEYS & set(merged):
        try:
            merged[key] = int(merged[key])
        except (TypeError, ValueError):
            raise ConfigError(f"{key}={merged[key]!r} is not an integer")
    for key in ("symbol_paths", "lambdas", "windows"):
        if key in merged:
            merged[key] = tuple(merged[key])
    return replace(config, tolerances=tolerances, **merged).validate()
