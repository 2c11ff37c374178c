"""Class balance statistics for the census tables."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Sequence

from .sieve import CensusTable


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    dof: int
    p_value: float


@dataclass(frozen=True)
class ProportionRow:
    n: int
    p1: float
    p7: float
    p9: float


def _gamma_q(a: float, x: float) -> float:
    """Regularized upper incomplete gamma Q(a, x), a > 0, x >= 0.

    Series for the lower function when x < a + 1, modified Lentz
    continued fraction otherwise; both run to 1e-12 relative.
    """
    if a <= 0.0 or x < 0.0:
        raise ValueError("need a > 0 and x >= 0")
    if x == 0.0:
        return 1.0
    log_front = -x + a * math.log(x) - math.lgamma(a)
    if x < a + 1.0:
        ap = a
        term = 1.0 / a
        total = term
        for _ in range(500):
            ap += 1.0
            term *= x / ap
            total += term
            if abs(term) < abs(total) * 1e-12:
                break
        return 1.0 - total * math.exp(log_front)
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 500):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < 1e-12:
            break
    return h * math.exp(log_front)


def chi_square_uniform(counts: Sequence[int]) -> ChiSquareResult:
    """Chi square test of the counts against a uniform split.

    Expected count is total/k in each of the k cells; dof is k - 1 and
    the p value is the upper tail of the chi square distribution.  An
    all-zero table has no distribution to test and is rejected.
    """
    obs = [int(c) for c in counts]
    if len(obs) < 2:
        raise ValueError("need at least 2 cells")
    if any(c < 0 for c in obs):
        raise ValueError("counts must be nonnegative")
    total = sum(obs)
    if total == 0:
        raise ValueError("all counts are zero")
    expected = total / len(obs)
    stat = math.fsum((o - expected) ** 2 / expected for o in obs)
    dof = len(obs) - 1
    return ChiSquareResult(statistic=stat, dof=dof,
                           p_value=_gamma_q(dof / 2.0, stat / 2.0))


def proportion_series(table: CensusTable) -> list[ProportionRow]:
    """Per-checkpoint class proportions among the non-exceptional pairs.

    Checkpoints where every pair is exceptional (or where there are no
    pairs at all) have no proportions; they are skipped with a warning
    rather than reported as zeros.
    """
    out = []
    for row in table.rows:
        classed = row.pi2 - row.exceptional
        if classed == 0:
            warnings.warn(f"no classed twin pairs at n={row.n}, skipping")
            continue
        out.append(ProportionRow(n=row.n, p1=row.c1 / classed,
                                 p7=row.c7 / classed, p9=row.c9 / classed))
    return out
