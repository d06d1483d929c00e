"""Deterministic parallel mapping for scans over the label j.

All evaluation functions in this package are pure, so term evaluation may be
fanned out to threads; results are always reassembled in argument order, which
keeps every report byte-identical regardless of the parallelism degree.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> list[R]:
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


__all__ = ["ordered_map"]
