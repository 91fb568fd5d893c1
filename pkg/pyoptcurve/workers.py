#!/usr/bin/env python3
"""
Process pool helpers. Work is always cut into the same tasks whatever the
worker count, and results come back in task order.
"""

import logging
import multiprocessing
import os

from . import util

__all__ = ['resolve_threads', 'ordered_map', 'first_hit']

logger = logging.getLogger(__name__)

THREADS_ENV = 'OPTCURVE_THREADS'


def resolve_threads(threads=None):
    """
    Returns the worker count to use.

    Parameters
    ----------
    threads : int or None
        Requested count. None reads OPTCURVE_THREADS, defaulting to 1.

    Returns
    -------
    int
        The count clipped to [1, cpu_count].
    """
    if threads is None:
        threads = os.environ.get(THREADS_ENV, 1)
    try:
        threads = int(threads)
    except (TypeError, ValueError):
        raise ValueError('Invalid thread count %r.' % (threads,))
    return util.clip(threads, 1, os.cpu_count() or 1)


def ordered_map(func, tasks, threads=None):
    """
    Yields func(task) for each task, in task order.

    func must be a picklable module level callable. With a single worker
    the tasks run inline. Closing the generator early terminates the pool.
    """
    threads = resolve_threads(threads)
    if threads <= 1:
        for task in tasks:
            yield func(task)
        return
    logger.debug('Starting pool with %d workers.', threads)
    with multiprocessing.Pool(processes=threads) as pool:
        for result in pool.imap(func, tasks):
            yield result


def first_hit(func, tasks, threads=None):
    """
    Returns the first result that is not None, in task order.
    """
    results = ordered_map(func, tasks, threads)
    try:
        for result in results:
            if result is not None:
                return result
    finally:
        results.close()
    return None
