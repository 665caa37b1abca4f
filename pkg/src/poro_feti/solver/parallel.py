#!/usr/bin/env python3

# HERE IS THE CHANGELOG FOR THIS VERSION OF THE FILE:
# - Two-subdomain executor, serial or on a thread pool
# - Per-subdomain wall-time accounting
#

"""
Execution of the independent per-subdomain solves.

SuperLU releases the GIL inside its triangular solves, so two worker threads
overlap the poroelastic and elastic solves. Results are always returned in
the order P, E so that reductions over subdomains do not depend on thread
scheduling.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from types import TracebackType
from typing import Callable, TypeVar

from ..core.constants import SUBDOMAIN_WORKERS
from ..core.types import SubdomainId

__all__ = ["SubdomainExecutor"]

T = TypeVar("T")

_ORDER = (SubdomainId.P, SubdomainId.E)


class SubdomainExecutor:
    """Run one callable per subdomain and collect timed results."""

    def __init__(self, concurrent: bool = False, workers: int = SUBDOMAIN_WORKERS) -> None:
        self.concurrent = concurrent
        self._pool = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="subdomain") if concurrent else None
        self.elapsed: dict[SubdomainId, float] = {sid: 0.0 for sid in _ORDER}

    def _timed(self, fn: Callable[[SubdomainId], T], sid: SubdomainId) -> tuple[T, float]:
        start = time.perf_counter()
        result = fn(sid)
        return result, time.perf_counter() - start

    def run(self, fn: Callable[[SubdomainId], T]) -> dict[SubdomainId, T]:
        """Call ``fn(P)`` and ``fn(E)``; exceptions from either call propagate."""
        if self._pool is None:
            timed = {sid: self._timed(fn, sid) for sid in _ORDER}
        else:
            futures = {sid: self._pool.submit(self._timed, fn, sid) for sid in _ORDER}
            timed = {sid: futures[sid].result() for sid in _ORDER}
        for sid in _ORDER:
            self.elapsed[sid] += timed[sid][1]
        return {sid: timed[sid][0] for sid in _ORDER}

    def reset_timers(self) -> None:
        self.elapsed = {sid: 0.0 for sid in _ORDER}

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown(wait=True)
            self._pool = None

    def __enter__(self) -> "SubdomainExecutor":
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()
