"""Order-preserving process-pool map.  Results never depend on the worker count."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def chunked(items: Sequence, parts: int) -> list:
    size = max(1, -(-len(items) // max(1, parts)))
    return [items[i:i + size] for i in range(0, len(items), size)]


def pmap(fn: Callable, items: Sequence, workers: int = 1, min_items: int = 2) -> list:
    """``[fn(x) for x in items]``, optionally spread over processes.

    ``fn`` must be a module-level function.  Output order matches input order.
    """
    items = list(items)
    if workers <= 1 or len(items) < min_items:
        return [fn(x) for x in items]
    workers = min(workers, len(items), os.cpu_count() or 1) or 1
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))
