"""Worker-pool sizing and order-preserving parallel map.

Grid scans are numpy-bound, so threads only help while numpy releases the
GIL; results are always gathered in submission order so reports never depend
on scheduling.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from harmonic_ctc.config.settings import get_settings

T = TypeVar('T')
R = TypeVar('R')

MAX_WORKERS = 32


def worker_count(user_defined: Optional[int] = None) -> int:
    """Number of threads for a scan; 0 means one per CPU, capped at 32."""
    requested = get_settings().workers if user_defined is None else user_defined
    if requested == 0:
        requested = os.cpu_count() or 4
    return max(1, min(int(requested), MAX_WORKERS))


def map_ordered(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> List[R]:
    items = list(items)
    count = min(worker_count(workers), max(len(items), 1))
    if count == 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=count) as pool:
        return list(pool.map(func, items))
