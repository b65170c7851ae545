"""
Unrelated, but useful functions used in various places throughout
usdcoherence.
"""

import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from usdcoherence.program import Program, ProgramShutdownError


def map_ordered(function, items, workers=1):
    """
    Apply function to every item and yield the results in the order of items,
    whatever order they complete in. Before each result is handed out the
    program state is polled so that a shutdown request stops the iteration.

    @param function Callable taking one item
    @param items    Iterable of items
    @param workers  Number of threads; 1 evaluates lazily in this thread

    @return generator of results
    """

    if workers <= 1:
        for item in items:
            if not Program.is_running():
                raise ProgramShutdownError
            yield function(item)
        return

    with ThreadPoolExecutor(workers) as executor:
        futures = [executor.submit(function, item) for item in items]

        try:
            for future in futures:
                if not Program.is_running():
                    raise ProgramShutdownError
                yield future.result()

        finally:
            for future in futures:
                future.cancel()


def sweep_values(start, stop, step):
    """
    Points start, start + step, ... up to and including stop. Each point is
    computed from its index so that long sweeps do not drift.

    @param start    First value
    @param stop     Last value, included when reached within step / 1e6
    @param step     Positive increment

    @return numpy array of values
    """

    if step <= 0.0:
        raise ValueError(f"step {step} must be positive")

    if stop < start:
        raise ValueError(f"stop {stop} lies before start {start}")

    count = int(math.floor((stop - start) / step + 1e-6)) + 1
    values = start + step * np.arange(count)
    return np.minimum(values, stop)
