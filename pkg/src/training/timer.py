"""Accumulating wall-clock timer for the compute portion of an epoch."""

import time


class ComputeTimer:
    """Sums the durations of ``begin``/``end`` spans."""

    def __init__(self) -> None:
        self._total_ns = 0
        self._start_ns: int | None = None

    def begin(self) -> None:
        self._start_ns = time.perf_counter_ns()

    def end(self) -> None:
        if self._start_ns is None:
            raise RuntimeError("ComputeTimer.end() called without begin()")
        self._total_ns += time.perf_counter_ns() - self._start_ns
        self._start_ns = None

    @property
    def total_ms(self) -> float:
        return self._total_ns / 1e6
