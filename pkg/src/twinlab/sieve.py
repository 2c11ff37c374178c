"""Segmented twin prime census.

A twin pair (q, q+2) is counted by its smaller member q, and a pair is
included at a checkpoint n exactly when q + 2 <= n.  Every pair beyond
(3, 5) and (5, 7) has q ending in 1, 7 or 9, so the census splits into
three residue classes plus those two exceptional pairs.

The sieve works on odd values only, seeded from a mod-105 wheel, in
fixed-size segments so memory stays bounded by the segment size plus
the base primes below sqrt(limit).  Segments can be sieved by a thread
pool; results are merged in segment order, so the output is identical
for any thread count.
"""

from __future__ import annotations

import math
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

_WHEEL = 105  # 3 * 5 * 7
_DEFAULT_SLOTS = 1 << 21  # odd values per segment


class CensusRow(NamedTuple):
    n: int
    pi2: int
    c1: int
    c7: int
    c9: int
    exceptional: int


class TwinPair(NamedTuple):
    p: int
    label: str


@dataclass(frozen=True)
class CensusTable:
    """Cumulative pair counts at each requested checkpoint."""

    limit: int
    rows: tuple[CensusRow, ...]


def class_label(p: int) -> str:
    """Residue class of a twin pair, keyed by the smaller member.

    The two pairs (3, 5) and (5, 7) are labelled ``exceptional``; every
    other smaller member ends in 1, 7 or 9 and gets ``c1``, ``c7`` or
    ``c9`` accordingly.
    """
    if p in (3, 5):
        return "exceptional"
    d = p % 10
    if d == 1:
        return "c1"
    if d == 7:
        return "c7"
    if d == 9:
        return "c9"
    raise ValueError(f"{p} is not the smaller member of a twin pair")


def decade_checkpoints(limit: int) -> list[int]:
    """Powers of ten in [10, limit], with limit appended when it is not
    itself a power of ten."""
    out = []
    n = 10
    while n <= limit:
        out.append(n)
        n *= 10
    if limit >= 1 and (not out or out[-1] != limit):
        out.append(limit)
    return out


def _simple_primes(limit: int) -> np.ndarray:
    """Dense odd-only sieve; used for base primes up to sqrt(limit)."""
    if limit < 2:
        return np.empty(0, dtype=np.int64)
    if limit == 2:
        return np.array([2], dtype=np.int64)
    size = (limit - 1) // 2  # odds 3, 5, ..., <= limit
    mask = np.ones(size, dtype=bool)
    for i in range((math.isqrt(limit) - 1) // 2):
        if mask[i]:
            p = 2 * i + 3
            mask[(p * p - 3) // 2 :: p] = False
    odds = 2 * np.flatnonzero(mask).astype(np.int64) + 3
    return np.concatenate((np.array([2], dtype=np.int64), odds))


def _odd_mask(lo: int, size: int, base: np.ndarray) -> np.ndarray:
    """Primality mask for the odd values lo, lo+2, ..., lo+2*(size-1).

    lo must be odd and >= 3.  base holds the sieving primes >= 11 in
    ascending order; multiples of 3, 5 and 7 are removed by tiling one
    precomputed wheel row.
    """
    i = np.arange(_WHEEL, dtype=np.int64)
    v = (lo + 2 * i) % _WHEEL
    row = (v % 3 != 0) & (v % 5 != 0) & (v % 7 != 0)
    reps = (size + _WHEEL - 1) // _WHEEL
    seg = np.tile(row, reps)[:size]
    if lo == 3:
        seg[0:3] = True  # 3, 5, 7 survive their own wheel
    hi = lo + 2 * (size - 1)
    sq = math.isqrt(hi)
    for p in base:
        p = int(p)
        if p > sq:
            break
        start = p * p
        if start < lo:
            start = ((lo + p - 1) // p) * p
            if start % 2 == 0:
                start += p
        seg[(start - lo) >> 1 :: p] = False
    return seg


def _segment_bounds(limit: int, slots: int) -> list[tuple[int, int]]:
    qmax = limit - 2  # largest admissible smaller member
    out = []
    lo = 3
    while lo <= qmax:
        n = min(slots, (qmax - lo) // 2 + 1)
        out.append((lo, n))
        lo += 2 * n
    return out


def _ordered_map(fn, items: Sequence, threads: int) -> Iterator:
    """map() preserving order, optionally through a thread pool.

    A bounded window of futures keeps memory flat when the consumer is
    slower than the workers.
    """
    if threads <= 1:
        yield from map(fn, items)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        window = 2 * threads
        pending: deque = deque()
        for item in items:
            pending.append(pool.submit(fn, item))
            if len(pending) >= window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


def _twin_segments(limit: int, threads: int = 1,
                   slots: int | None = None) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (lo, mask) per segment, mask[i] true when lo+2i starts a twin pair.

    Each segment sieves one slot past its end so a pair straddling the
    boundary is caught by the segment that owns the smaller member.
    """
    if slots is None:
        slots = _DEFAULT_SLOTS
    if limit < 5:
        return
    base_all = _simple_primes(math.isqrt(limit))
    base = base_all[base_all >= 11]

    def work(bound: tuple[int, int]) -> np.ndarray:
        lo, n_slots = bound
        seg = _odd_mask(lo, n_slots + 1, base)
        return seg[:-1] & seg[1:]

    bounds = _segment_bounds(limit, slots)
    for (lo, _), tw in zip(bounds, _ordered_map(work, bounds, threads)):
        yield lo, tw


def sieve_primes(limit: int, segment_size: int = 2 * _DEFAULT_SLOTS) -> Iterator[int]:
    """Primes <= limit in ascending order.

    segment_size is the width of each sieving window in integers and
    must be at least 64.
    """
    limit = _as_int(limit, "limit")
    if segment_size < 64:
        raise ValueError("segment_size must be >= 64")
    if limit < 2:
        return
    yield 2
    if limit < 3:
        return
    base_all = _simple_primes(math.isqrt(limit))
    base = base_all[base_all >= 11]
    slots = segment_size // 2
    lo = 3
    while lo <= limit:
        size = min(slots, (limit - lo) // 2 + 1)
        seg = _odd_mask(lo, size, base)
        for i in np.flatnonzero(seg):
            yield lo + 2 * int(i)
        lo += 2 * size


def enumerate_twin_pairs(limit: int) -> Iterator[TwinPair]:
    """Twin pairs with p + 2 <= limit, ascending, labelled by residue class."""
    limit = _as_int(limit, "limit")
    for lo, tw in _twin_segments(limit):
        for i in np.flatnonzero(tw):
            p = lo + 2 * int(i)
            yield TwinPair(p, class_label(p))


def _as_int(value, name: str) -> int:
    iv = int(value)
    if iv != value:
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return iv


def _check_checkpoints(checkpoints: Iterable, limit: int) -> list[int]:
    cps = [_as_int(c, "checkpoint") for c in checkpoints]
    if any(b <= a for a, b in zip(cps, cps[1:])):
        raise ValueError("checkpoints must be strictly ascending")
    if cps and (cps[0] < 1 or cps[-1] > limit):
        raise ValueError("checkpoints must lie in [1, limit]")
    return cps


def _class_partial(tw: np.ndarray, lo: int, upto: int) -> tuple[int, int, int, int]:
    """Counts (pi2, c1, c7, c9) over the first upto slots of a segment.

    The slot for q = lo + 2i lands in residue class t mod 10 on a
    stride-5 subgrid, so each class is a strided count.  Exceptional
    pairs are pi2 minus the three classes: a smaller member above 5
    cannot end in 3 or 5, since q+2 would then be a multiple of 5.
    """
    pi2 = int(np.count_nonzero(tw[:upto]))
    cls = []
    for t in (1, 7, 9):
        off = ((t - lo) // 2) % 5
        cls.append(int(np.count_nonzero(tw[off:upto:5])))
    return pi2, cls[0], cls[1], cls[2]


def census(limit: int, checkpoints: Sequence[int] | None = None,
           threads: int = 1, slots: int | None = None) -> CensusTable:
    """Twin pair census with per-class splits at each checkpoint.

    Parameters
    ----------
    limit : int
        Largest n of interest; every checkpoint must be <= limit.
    checkpoints : sequence of int, optional
        Strictly ascending cut points.  Defaults to the decades of
        limit (see decade_checkpoints).
    threads : int
        Worker threads for segment sieving.  The merge is ordered, so
        results do not depend on this value.
    slots : int, optional
        Odd values per segment, a memory/speed tuning knob.

    Returns
    -------
    CensusTable
        One row (n, pi2, c1, c7, c9, exceptional) per checkpoint, each
        counting pairs with q + 2 <= n.
    """
    limit = _as_int(limit, "limit")
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    if checkpoints is None:
        cps = decade_checkpoints(limit)
    else:
        cps = _check_checkpoints(checkpoints, limit)

    tot = (0, 0, 0, 0)
    rows: list[CensusRow] = []
    ci = 0
    for lo, tw in _twin_segments(limit, threads=threads, slots=slots):
        hi = lo + 2 * len(tw)
        while ci < len(cps) and cps[ci] - 2 < hi:
            thresh = cps[ci] - 2
            upto = (thresh - lo) // 2 + 1 if thresh >= lo else 0
            part = _class_partial(tw, lo, upto)
            pi2, c1, c7, c9 = (a + b for a, b in zip(tot, part))
            rows.append(CensusRow(cps[ci], pi2, c1, c7, c9,
                                  pi2 - c1 - c7 - c9))
            ci += 1
        if ci >= len(cps):
            break
        part = _class_partial(tw, lo, len(tw))
        tot = tuple(a + b for a, b in zip(tot, part))
    # checkpoints below the first pair, or a limit too small to yield segments
    while ci < len(cps):
        pi2, c1, c7, c9 = tot
        rows.append(CensusRow(cps[ci], pi2, c1, c7, c9, pi2 - c1 - c7 - c9))
        ci += 1
    return CensusTable(limit=limit, rows=tuple(rows))
