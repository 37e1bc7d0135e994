"""Fixed-partition chunked evaluation.

Chunk boundaries depend only on the problem size, never on the thread
count, so results are reproducible bit for bit however many workers run.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, TypeVar

T = TypeVar("T")

CHUNK = 1 << 17


def map_chunks(fn: Callable[[int, int], T], n: int, threads: int = 1,
               chunk: int = CHUNK) -> List[T]:
    """Return [fn(lo, hi) for each fixed chunk of range(n)], in order."""
    bounds = [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]
    if threads <= 1 or len(bounds) <= 1:
        return [fn(lo, hi) for lo, hi in bounds]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda b: fn(*b), bounds))
