"""Deterministic data-parallel evaluation over fixed-size chunks.

Chunk boundaries depend only on the input length and ``chunk``, never on the
number of workers, and results are concatenated in index order.  Every
kernel therefore sees the same operands whatever the thread count, which
makes downstream reductions bit-identical across worker settings.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

WORKERS_ENV = "TOROIDAL_EULER_WORKERS"
DEFAULT_CHUNK = 512


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if raw:
        n = int(raw)
        if n < 1:
            raise ValueError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1


def chunk_slices(n: int, chunk: int = DEFAULT_CHUNK):
    return [slice(i, min(i + chunk, n)) for i in range(0, n, chunk)]


def chunked_map(fn, *arrays, chunk: int = DEFAULT_CHUNK, workers: int | None = None):
    """Apply ``fn`` to matching leading-axis chunks of ``arrays`` and reassemble.

    ``fn`` returns an array or a tuple/dict of arrays whose leading axis has
    the chunk length.
    """
    arrays = [np.asarray(a) for a in arrays]
    n = arrays[0].shape[0]
    if any(a.shape[0] != n for a in arrays):
        raise ValueError("all arrays must share the leading dimension")
    slices = chunk_slices(n, chunk)
    workers = worker_count() if workers is None else workers

    def run(sl):
        return fn(*(a[sl] for a in arrays))

    if workers == 1 or len(slices) <= 1:
        parts = [run(sl) for sl in slices]
    else:
        with ThreadPoolExecutor(max_workers=min(workers, len(slices))) as pool:
            parts = list(pool.map(run, slices))
    if not parts:
        return fn(*(a[:0] for a in arrays))
    first = parts[0]
    if isinstance(first, dict):
        return {k: np.concatenate([p[k] for p in parts]) for k in first}
    if isinstance(first, tuple):
        return tuple(np.concatenate([p[i] for p in parts]) for i in range(len(first)))
    return np.concatenate(parts)
