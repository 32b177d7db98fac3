import os
import logging
from concurrent.futures import ThreadPoolExecutor

logger = logging.getLogger(__name__)

THREADS_ENV = "PSRESTORE_THREADS"


def default_threads():
    """
    Thread budget taken from the :code:`PSRESTORE_THREADS` environment variable.

    :returns: number of worker threads (at least 1)
    """
    value = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        logger.warning("ignoring non-integer %s=%r", THREADS_ENV, value)
        threads = 1
    return max(1, threads)


def parallel_map(func, items, threads=1):
    """
    Apply **func** to every entry of **items** using up to **threads** workers.

    Results are returned in the order of **items**. Every item is processed
    by exactly one call, so the output does not depend on the thread count.

    :param func: callable taking one item
    :param items: iterable of work items
    :param threads: thread budget (int)
    :returns: list of results
    """
    items = list(items)
    threads = max(1, int(threads))

    if threads == 1 or len(items) < 2:
        return [func(item) for item in items]

    workers = min(threads, len(items))
    logger.debug("parallel_map: %d items on %d threads", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
