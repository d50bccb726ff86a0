"""Sharded evaluation with results merged back into input order."""
import multiprocessing
from concurrent.futures import ProcessPoolExecutor, ThreadPoolExecutor, as_completed
from typing import Callable, Iterable, List, TypeVar

from ..utils.logging import get_logger

logger = get_logger()

T = TypeVar('T')
R = TypeVar('R')


def _make_executor(max_workers: int):
    try:
        ctx = multiprocessing.get_context('fork')
        return ProcessPoolExecutor(max_workers=max_workers, mp_context=ctx)
    except (ValueError, OSError) as e:
        logger.warning(f"Process pool unavailable ({e}); falling back to threads")
        return ThreadPoolExecutor(max_workers=max_workers)


def run_sharded(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """Apply fn to every item; the result list is in item order for any worker count."""
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    results: List[R] = [None] * len(items)
    with _make_executor(workers) as executor:
        futures = {executor.submit(fn, item): index for index, item in enumerate(items)}
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return results
