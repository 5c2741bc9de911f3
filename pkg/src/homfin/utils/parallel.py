# src/homfin/utils/parallel.py

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")

_state = threading.local()
_default_workers = 1


def set_default_workers(workers: int) -> None:
    """Sets the pool size used by `degreewise` when no explicit count is given."""
    global _default_workers
    _default_workers = max(1, int(workers))
    logger.debug(f"Degreewise worker pool size set to {_default_workers}.")


def degreewise(fn: Callable[[int], T], degrees: Iterable[int], workers: int = None) -> Dict[int, T]:
    """
    Maps `fn` over internal degrees and returns {degree: result} in degree order.

    Per-degree linear algebra is independent, so it may run on a thread pool.
    Nested calls (a per-degree task that itself fans out) run inline.

    Args:
        fn: The per-degree computation.
        degrees: The degrees to process.
        workers: Pool size; defaults to the configured engine setting.

    Returns:
        A dict whose iteration order is the sorted degree order.
    """
    degrees = sorted(degrees)
    workers = _default_workers if workers is None else workers
    if workers <= 1 or len(degrees) <= 1 or getattr(_state, "inside", False):
        return {d: fn(d) for d in degrees}

    def run(d: int) -> T:
        _state.inside = True
        try:
            return fn(d)
        finally:
            _state.inside = False

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run, degrees))
    return dict(zip(degrees, results))
