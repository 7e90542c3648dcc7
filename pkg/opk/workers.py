"""
Process pool for grid cells

Every command splits its (t, λ) grid into independent cells; with --jobs > 1
the cells run in worker processes.
"""
import logging
import multiprocessing
import signal
from typing import Callable, List, Sequence, TypeVar

from .log import setup_logging

logger = logging.getLogger(__name__)

Cell = TypeVar("Cell")
Result = TypeVar("Result")


def _init_worker(verbosity: int):
    """Workers leave Ctrl+C to the parent, which terminates the pool"""
    signal.signal(signal.SIGINT, signal.SIG_IGN)
    setup_logging(verbosity)


def run_cells(fn: Callable[[Cell], Result], cells: Sequence[Cell], jobs: int = 1,
              verbosity: int = 0) -> List[Result]:
    """
    Map ``fn`` over ``cells``, in worker processes when ``jobs`` > 1.

    Args:
        fn: Picklable top-level function
        cells: Picklable cell descriptions
        jobs: Worker processes; 1 runs serially in this process
        verbosity: Logging level handed to the workers

    Returns:
        Results in the order of ``cells``
    """
    if jobs < 1:
        raise ValueError("jobs must be at least 1")
    if jobs == 1 or len(cells) <= 1:
        return [fn(cell) for cell in cells]

    workers = min(jobs, len(cells))
    logger.info("dispatching %d cells to %d workers", len(cells), workers)
    pool = multiprocessing.Pool(workers, initializer=_init_worker, initargs=(verbosity,))
    try:
        results = pool.map(fn, cells, chunksize=1)
        pool.close()
        return results
    except KeyboardInterrupt:
        logger.warning("interrupted; terminating %d workers", workers)
        pool.terminate()
        raise
    finally:
        pool.join()
