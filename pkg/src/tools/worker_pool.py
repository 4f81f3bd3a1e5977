"""
Worker Pool - Run pure tasks in worker processes and merge results by task index
"""
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, List, Sequence

logger = logging.getLogger(__name__)


def parallel_map(func: Callable[[Any], Any], tasks: Sequence[Any], workers: int = 1) -> List[Any]:
    """[func(t) for t in tasks], computed by up to `workers` processes.

    Results come back in task order whatever the scheduling, so the worker count
    never changes the output.
    """
    tasks = list(tasks)
    if workers <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    workers = min(workers, len(tasks))
    logger.debug("Dispatching %d tasks to %d workers", len(tasks), workers)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
