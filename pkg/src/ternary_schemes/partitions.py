"""Streaming set partitions as restricted growth strings.

A set partition of ``N`` items into exactly ``k`` blocks is encoded by its
restricted growth string (RGS) ``a`` with ``a[0] = 0`` and
``a[i] <= max(a[:i]) + 1``; block ``b`` holds the items labelled ``b``.
Both generators below emit RGSs in lexicographic order.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence, TypeVar

import numba
import numpy as np

T = TypeVar("T")


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


def _check(n_items: int, k: int):
    if not 1 <= k <= n_items:
        raise ValueError(f"block count {k} outside 1..{n_items}")


def iter_rgs(n_items: int, k: int) -> Iterator[tuple[int, ...]]:
    """Yield every RGS of length ``n_items`` using exactly ``k`` labels."""
    _check(n_items, k)
    a = [0] * n_items

    def rec(i: int, used: int):
        if i == n_items:
            if used == k:
                yield tuple(a)
            return
        # used + (items left after this one) must still reach k.
        for v in range(min(used + 1, k)):
            new_used = max(used, v + 1)
            if new_used + (n_items - i - 1) < k:
                continue
            a[i] = v
            yield from rec(i + 1, new_used)

    a[0] = 0
    yield from rec(1, 1)


def enumerate_orbit_partitions(orbits: Sequence[T], k: int) -> Iterator[list[list[T]]]:
    """Yield each partition of ``orbits`` into ``k`` unordered nonempty blocks once."""
    for rgs in iter_rgs(len(orbits), k):
        blocks: list[list[T]] = [[] for _ in range(k)]
        for item, b in zip(orbits, rgs):
            blocks[b].append(item)
        yield blocks


@numba.njit(cache=True, nogil=True)
def _fill_rgs(a, k, out):
    """Copy successive RGSs starting at ``a`` into ``out``; advance ``a`` in place.

    Returns ``(rows written, exhausted)``.
    """
    n = a.shape[0]
    mx = np.empty(n, dtype=np.int64)
    rows = 0
    while rows < out.shape[0]:
        for j in range(n):
            out[rows, j] = a[j]
        rows += 1
        mx[0] = a[0]
        for j in range(1, n):
            mx[j] = max(mx[j - 1], a[j])
        i = n - 1
        found = False
        while i >= 1:
            hi = min(mx[i - 1] + 1, k - 1)
            if a[i] < hi:
                v = a[i] + 1
                used = max(mx[i - 1], v) + 1
                if used + (n - 1 - i) >= k:
                    a[i] = v
                    need = k - used
                    for j in range(i + 1, n - need):
                        a[j] = 0
                    for q in range(need):
                        a[n - need + q] = used + q
                    found = True
                    break
            i -= 1
        if not found:
            return rows, True
    return rows, False


def iter_rgs_chunks(n_items: int, k: int, chunk: int = 1 << 16) -> Iterator[np.ndarray]:
    """Yield the same sequence as :func:`iter_rgs` as ``int8`` arrays of at most ``chunk`` rows."""
    _check(n_items, k)
    if k > 127:
        raise ValueError("block count too large for int8 labels")
    a = np.zeros(n_items, dtype=np.int64)
    a[n_items - k + 1:] = np.arange(1, k)
    buf = np.empty((chunk, n_items), dtype=np.int64)
    while True:
        rows, done = _fill_rgs(a, k, buf)
        yield buf[:rows].astype(np.int8)
        if done:
            return
