"""
parallel.py

PURPOSE: Ordered fan-out of independent numerical terms over worker threads.
DEPENDENCIES: concurrent.futures

ARCHITECTURE NOTES:
Results come back in input order whatever the thread count, and callers reduce
them with math.fsum over that order, so the thread count never changes a bit
of any result. scipy's quadrature releases the GIL in its Fortran core, which
is what makes threads worthwhile here.
"""

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from typing import TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    """Apply func to every item, in parallel when threads > 1, keeping input order."""
    work = list(items)
    if threads <= 1 or len(work) < 2:
        return [func(item) for item in work]
    logger.debug(f"Evaluating {len(work)} terms on {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(func, work))
