"""Thread-pool fan-out with deterministic, order-preserving merge."""

import os
from concurrent.futures import ThreadPoolExecutor

THREADS_ENV = "SCHOLARREC_THREADS"


def max_threads(default: int = 1) -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        value = int(raw)
    except ValueError:
        return default
    return max(1, value)


def parallel_map(fn, items, threads: int | None = None) -> list:
    """Results come back in input order regardless of scheduling."""
    if threads is None:
        threads = max_threads()
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
