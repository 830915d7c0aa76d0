"""Tagged console logging ("[TAG] message") on stderr."""
import os
import sys


def log(tag: str, message: str) -> None:
    """
    Print a tagged progress line to stderr.

    Stdout carries report data only. TORUSPDO_QUIET=1 silences it.
    """
    if os.getenv("TORUSPDO_QUIET") == "1":
        return
    print(f"[{tag}] {message}", file=sys.stderr, flush=True)
