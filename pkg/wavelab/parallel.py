"""
Ensemble execution helpers.

Independent members (epsilon values, resolutions) share no mutable state, so a
thread pool is enough; numpy releases the GIL inside the stencil arithmetic.
Results always come back in submission order, which keeps artifacts
deterministic regardless of the thread count.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from dotenv import load_dotenv

T = TypeVar("T")
R = TypeVar("R")

load_dotenv()


def resolve_threads(threads: Optional[int] = None) -> int:
    """Thread count from the argument, then WAVELAB_THREADS, then 1."""
    if threads is None:
        env = os.getenv("WAVELAB_THREADS")
        threads = int(env) if env else 1
    return max(1, int(threads))


def run_ensemble(
    func: Callable[[T], R], items: Iterable[T], threads: Optional[int] = None
) -> List[R]:
    """Apply func to every item, possibly concurrently, preserving order."""
    items = list(items)
    workers = min(resolve_threads(threads), max(1, len(items)))
    if workers == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
