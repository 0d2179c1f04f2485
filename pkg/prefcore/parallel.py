"""
Deterministic fan-out over joblib.

Work is cut into chunks in a fixed order; results come back in chunk order
whatever the worker count, and callers merge them by a fixed key.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional, TypeVar

from joblib import Parallel, delayed

from config import N_JOBS

T = TypeVar("T")
R = TypeVar("R")


def split(items: list[T], n_chunks: int) -> list[list[T]]:
    n_chunks = max(1, min(n_chunks, len(items)))
    size, extra = divmod(len(items), n_chunks)
    chunks, start = [], 0
    for k in range(n_chunks):
        stop = start + size + (1 if k < extra else 0)
        chunks.append(items[start:stop])
        start = stop
    return [c for c in chunks if c]


def run_chunks(
    fn: Callable[[T], R],
    chunks: Iterable[T],
    n_jobs: Optional[int] = None,
) -> list[R]:
    chunks = list(chunks)
    n_jobs = N_JOBS if n_jobs is None else n_jobs
    if n_jobs <= 1 or len(chunks) <= 1:
        return [fn(c) for c in chunks]
    return Parallel(n_jobs=n_jobs, backend="threading")(delayed(fn)(c) for c in chunks)
