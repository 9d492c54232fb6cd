"""Deterministic fan-out: results come back in chunk order whatever the worker count."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence


def split_evenly(items: Sequence, parts: int) -> list:
    parts = max(1, min(parts, len(items))) if items else 1
    size, extra = divmod(len(items), parts)
    out, start = [], 0
    for k in range(parts):
        end = start + size + (1 if k < extra else 0)
        out.append(items[start:end])
        start = end
    return out


def map_chunks(func: Callable, chunks: Sequence, workers: int = 1) -> list:
    """[func(c) for c in chunks], optionally on a process pool."""
    if workers <= 1 or len(chunks) <= 1:
        return [func(c) for c in chunks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, chunks))
