"""Shared worker pool for independent, pure computations."""

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from settings import DEFAULT_WORKERS

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

_executor: Optional[ThreadPoolExecutor] = None
_workers: int = DEFAULT_WORKERS
_local = threading.local()


def configure(workers: int) -> None:
    global _executor, _workers
    workers = max(1, workers)
    if workers != _workers and _executor is not None:
        _executor.shutdown(wait=True)
        _executor = None
    _workers = workers


def get_executor() -> ThreadPoolExecutor:
    global _executor
    if _executor is None:
        _executor = ThreadPoolExecutor(max_workers=_workers)
    return _executor


def _in_worker(fn: Callable[[T], R]) -> Callable[[T], R]:
    def run(item: T) -> R:
        _local.nested = True
        try:
            return fn(item)
        finally:
            _local.nested = False
    return run


def ordered_map(fn: Callable[[T], R], items: Iterable[T]) -> List[R]:
    """Apply fn to every item, returning results in input order.

    Calls made from inside a worker run inline so nested maps cannot starve
    the pool.
    """
    items = list(items)
    if _workers <= 1 or len(items) <= 1 or getattr(_local, "nested", False):
        return [fn(item) for item in items]
    logger.debug("dispatching %d tasks to %d workers", len(items), _workers)
    return list(get_executor().map(_in_worker(fn), items))


def worker_count() -> int:
    return _workers
