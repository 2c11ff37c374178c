"""Monte Carlo evaluation of the density integral I(n).

Draws come from counter-based Philox streams: sample index space is
cut into fixed chunks of 2^20 and chunk c uses the generator jumped c
times from the seed.  Chunks are merged in index order, so the result
is bitwise identical for any thread count, and a seed plus a sample
count fully determines the estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .analytic import IntegralEstimate, hl_integral
from .sieve import _ordered_map

CHUNK = 1 << 20

MODES = ("uniform", "annex-stratified")


def _integrand(x: np.ndarray) -> np.ndarray:
    lg = np.log(x)
    return 1.0 / (lg * lg)


@dataclass(frozen=True)
class McConfig:
    """Estimator inputs: interval top n, sample count, seed, mode.

    mode ``uniform`` averages f over uniform draws on [2, n] and scales
    by the interval length.  mode ``annex-stratified`` reproduces a
    fixed-grid construction where each grid value is weighted by one
    uniform draw; it carries a deliberate bias of about one half and is
    kept for comparison runs (see mc_integral).
    """

    n: float
    samples: int
    seed: int = 0
    mode: str = "uniform"

    def __post_init__(self):
        if not self.n >= 2.0:
            raise ValueError("n must be >= 2")
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "annex-stratified" and self.samples < 2:
            raise ValueError("annex-stratified needs samples >= 2")


def _chunk_bounds(total: int) -> list[tuple[int, int]]:
    return [(c, min(CHUNK, total - c * CHUNK))
            for c in range((total + CHUNK - 1) // CHUNK)]


def _chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=seed).jumped(chunk))


def mc_integral(config: McConfig, threads: int = 1,
                integrand: Callable[[np.ndarray], np.ndarray] | None = None
                ) -> IntegralEstimate:
    """Monte Carlo estimate of I(n) under the given configuration.

    Returns an IntegralEstimate with method ``monte_carlo`` whose
    error_estimate is one standard error (NaN when samples == 1, where
    a sample variance does not exist).  n == 2 short-circuits to an
    exact zero.

    integrand is a test hook; the default is 1/ln^2 x.
    """
    f = integrand if integrand is not None else _integrand
    n, total, seed = config.n, config.samples, config.seed
    if n == 2.0:
        return IntegralEstimate(n=n, value=0.0, method="monte_carlo",
                                error_estimate=0.0,
                                meta={"mode": config.mode, "samples": total})

    if config.mode == "uniform":
        def work(bound: tuple[int, int]) -> tuple[float, float]:
            c, cnt = bound
            u = _chunk_rng(seed, c).random(cnt)
            fx = f(2.0 + (n - 2.0) * u)
            return float(np.sum(fx)), float(np.dot(fx, fx))

        parts = list(_ordered_map(work, _chunk_bounds(total), threads))
        sum_f = math.fsum(p[0] for p in parts)
        sum_f2 = math.fsum(p[1] for p in parts)
        mean = sum_f / total
        value = (n - 2.0) * mean
        if total > 1:
            var = max(0.0, (sum_f2 - total * mean * mean) / (total - 1))
            stderr = (n - 2.0) * math.sqrt(var / total)
        else:
            stderr = float("nan")
        return IntegralEstimate(n=n, value=value, method="monte_carlo",
                                error_estimate=stderr,
                                meta={"mode": "uniform", "samples": total,
                                      "seed": seed})

    # annex-stratified: f on an even grid over [2, n], each point weighted
    # by one uniform draw.  The i = L-1 endpoint is excluded.
    grid_n = total
    step = (n - 2.0) / (grid_n - 1)

    def work(bound: tuple[int, int]) -> tuple[float, float]:
        c, cnt = bound
        idx = np.arange(c * CHUNK, c * CHUNK + cnt, dtype=np.float64)
        fx = f(2.0 + step * idx)
        u = _chunk_rng(seed, c).random(cnt)
        return float(np.dot(fx, u)), float(np.dot(fx, fx))

    parts = list(_ordered_map(work, _chunk_bounds(grid_n - 1), threads))
    sum_fu = math.fsum(p[0] for p in parts)
    sum_f2 = math.fsum(p[1] for p in parts)
    value = n * sum_fu / grid_n
    # each term n f(x_i) U_i / L has variance (n f(x_i) / L)^2 / 12
    stderr = (n / grid_n) * math.sqrt(sum_f2 / 12.0)
    return IntegralEstimate(n=n, value=value, method="monte_carlo",
                            error_estimate=stderr,
                            meta={"mode": "annex-stratified",
                                  "samples": total, "seed": seed})


class ConvergenceStudy(NamedTuple):
    n: float
    rows: tuple[tuple[int, float], ...]  # (samples, mean relative error)
    slope: float


def convergence_study(n: float, sample_ladder: Sequence[int],
                      seeds: Sequence[int],
                      integrand: Callable[[np.ndarray], np.ndarray] | None = None,
                      reference: float | None = None,
                      threads: int = 1) -> ConvergenceStudy:
    """Mean relative error of the uniform estimator along a sample ladder.

    For each ladder entry N the estimator runs once per seed and the
    relative errors against the reference value (the deterministic
    I(n) unless one is injected) are averaged.  slope is the fitted
    log-log decay rate, NaN when an error vanishes, which happens for
    constant test integrands where the estimator is exact.
    """
    ladder = [int(v) for v in sample_ladder]
    if len(ladder) < 2:
        raise ValueError("sample_ladder needs at least 2 entries")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise ValueError("sample_ladder must be strictly ascending")
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seeds must be nonempty")
    ref = reference if reference is not None else hl_integral(n).value
    if ref == 0.0:
        raise ValueError("reference value must be nonzero")
    rows = []
    for total in ladder:
        errs = []
        for seed in seeds:
            est = mc_integral(McConfig(n=n, samples=total, seed=seed),
                              threads=threads, integrand=integrand)
            errs.append(abs(est.value - ref) / abs(ref))
        rows.append((total, math.fsum(errs) / len(errs)))
    if all(err > 0.0 for _, err in rows):
        slope = float(np.polyfit(np.log(ladder),
                                 np.log([err for _, err in rows]), 1)[0])
    else:
        slope = float("nan")
    return ConvergenceStudy(n=float(n), rows=tuple(rows), slope=slope)
