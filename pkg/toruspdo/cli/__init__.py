"""Command-line frontend."""
from toruspdo.cli.commands import COMMAND_RUNNERS, CommandOutcome, effective_config, run_command
from toruspdo.cli.main import build_parser, main

__all__ = [
    "COMMAND_RUNNERS",
    "CommandOutcome",
    "effective_config",
    "run_command",
    "build_parser",
    "main",
]
