"""Partial sums of reciprocals of twin primes and their growth checks.

The sum B(n) = sum over pairs (q, q+2) with q + 2 <= n of 1/q + 1/(q+2)
converges; these routines track its partial values, compare each pair
against an explicit density bound, and evaluate the convergent series
that dominates the whole tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .sieve import _check_checkpoints, _twin_segments, decade_checkpoints

DEFAULT_BOUND = 4.5


@dataclass(frozen=True)
class BrunSum:
    limit: int
    value: float
    pair_count: int
    last_q: int | None


class BoundViolation(NamedTuple):
    r: int      # 1-based pair index
    q: int      # smaller member
    check: str
    lhs: float
    rhs: float


def brun_series(limit: int, checkpoints: Sequence[int] | None = None
                ) -> list[BrunSum]:
    """Partial Brun sums at each checkpoint, single sieve pass.

    Pair inclusion follows the census convention: (q, q+2) counts at
    checkpoint n exactly when q + 2 <= n.
    """
    limit = int(limit)
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if checkpoints is None:
        cps = decade_checkpoints(limit)
    else:
        cps = _check_checkpoints(checkpoints, limit)
    parts: list[float] = []   # one partial sum per completed segment
    r_done = 0
    last_done: int | None = None
    out: list[BrunSum] = []
    ci = 0
    for lo, tw in _twin_segments(limit):
        hi = lo + 2 * len(tw)
        while ci < len(cps) and cps[ci] - 2 < hi:
            thresh = cps[ci] - 2
            upto = (thresh - lo) // 2 + 1 if thresh >= lo else 0
            q = lo + 2.0 * np.flatnonzero(tw[:upto])
            value = math.fsum(parts + [float(np.sum(1.0 / q + 1.0 / (q + 2.0)))])
            r = r_done + len(q)
            last = int(q[-1]) if len(q) else last_done
            out.append(BrunSum(limit=cps[ci], value=value,
                               pair_count=r, last_q=last))
            ci += 1
        if ci >= len(cps):
            break
        q = lo + 2.0 * np.flatnonzero(tw)
        parts.append(float(np.sum(1.0 / q + 1.0 / (q + 2.0))))
        r_done += len(q)
        if len(q):
            last_done = int(q[-1])
    while ci < len(cps):
        out.append(BrunSum(limit=cps[ci], value=math.fsum(parts),
                           pair_count=r_done, last_q=last_done))
        ci += 1
    return out


def brun_partial_sum(limit: int) -> BrunSum:
    """B(limit); zero with no pairs when limit < 5."""
    limit = int(limit)
    if limit < 1:
        return BrunSum(limit=limit, value=0.0, pair_count=0, last_q=None)
    return brun_series(limit, [limit])[0]


def comparison_bound_check(limit: int, bound: float = DEFAULT_BOUND
                           ) -> list[BoundViolation]:
    """Scan every pair up to limit against the density bound.

    With r the 1-based index of the pair and q its smaller member,
    each of the following must hold for the comparison argument:

    * ``r_density``:  r ln^2 q / q <= bound
    * ``r_index``:    r ln^2 (r+1) / q <= bound
    * ``q_gt_r``:     q > r + 1
    * ``prefix_domination``: the running Brun sum never exceeds the
      running dominating series bound * sum 1/(r ln^2 (r+1))

    Returns the violations found; an empty list means every check
    passed for every prefix.
    """
    limit = int(limit)
    if bound <= 0:
        raise ValueError("bound must be positive")
    violations: list[BoundViolation] = []
    r_done = 0
    lhs_carry = 0.0
    rhs_carry = 0.0
    for lo, tw in _twin_segments(limit):
        q = lo + 2.0 * np.flatnonzero(tw)
        if not len(q):
            continue
        r = r_done + 1.0 + np.arange(len(q), dtype=np.float64)
        ln_q = np.log(q)
        m1 = r * ln_q * ln_q / q
        ln_r1 = np.log(r + 1.0)
        m2 = r * ln_r1 * ln_r1 / q
        for i in np.flatnonzero(m1 > bound):
            violations.append(BoundViolation(int(r[i]), int(q[i]),
                                             "r_density", float(m1[i]), bound))
        for i in np.flatnonzero(m2 > bound):
            violations.append(BoundViolation(int(r[i]), int(q[i]),
                                             "r_index", float(m2[i]), bound))
        for i in np.flatnonzero(q <= r + 1.0):
            violations.append(BoundViolation(int(r[i]), int(q[i]),
                                             "q_gt_r", float(q[i]), float(r[i] + 1)))
        lhs = lhs_carry + np.cumsum(1.0 / q + 1.0 / (q + 2.0))
        rhs = rhs_carry + np.cumsum(bound / (r * ln_r1 * ln_r1))
        for i in np.flatnonzero(lhs > rhs):
            violations.append(BoundViolation(int(r[i]), int(q[i]),
                                             "prefix_domination",
                                             float(lhs[i]), float(rhs[i])))
        lhs_carry = float(lhs[-1])
        rhs_carry = float(rhs[-1])
        r_done += len(q)
    return violations


def dominating_series_partial(r_max: int, bound: float = DEFAULT_BOUND
                              ) -> tuple[float, float]:
    """Partial sum of bound/(r ln^2 (r+1)) for r <= r_max, plus a tail bound.

    The tail over r > r_max is bounded by the integral test:
    bound/ln(r_max) once r_max >= 2.  For r_max = 1 the first tail term
    is split off before the integral applies.
    """
    r_max = int(r_max)
    if r_max < 1:
        raise ValueError("r_max must be >= 1")
    if bound <= 0:
        raise ValueError("bound must be positive")
    parts = []
    step = 1 << 20
    for start in range(1, r_max + 1, step):
        r = np.arange(start, min(start + step, r_max + 1), dtype=np.float64)
        ln_r1 = np.log(r + 1.0)
        parts.append(float(np.sum(1.0 / (r * ln_r1 * ln_r1))))
    partial = bound * math.fsum(parts)
    if r_max >= 2:
        tail = bound / math.log(r_max)
    else:
        tail = bound * (1.0 / (2.0 * math.log(3.0) ** 2) + 1.0 / math.log(2.0))
    return partial, tail
