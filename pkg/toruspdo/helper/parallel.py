"""Thread pool helpers capped by TORUSPDO_THREADS."""
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

from dotenv import load_dotenv

T = TypeVar("T")
R = TypeVar("R")


def thread_count() -> int:
    """Number of worker threads allowed (TORUSPDO_THREADS, default CPU count)."""
    load_dotenv()
    raw = os.getenv("TORUSPDO_THREADS")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            value = 0
        if value >= 1:
            return value
    return os.cpu_count() or 1


def parallel_map(fn: Callable[[T], R], items: Iterable[T]) -> list[R]:
    """
    Map fn over items on a thread pool, preserving input order.
    """
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
