"""Deterministic sequences for quasi Monte Carlo runs.

Two families are supported.  Van der Corput radical-inverse points are
genuine low discrepancy points in [0, 1) and feed a plain equal-weight
quadrature.  Gap sequences (differences of consecutive primes, or of
consecutive twin pair smaller members) are empirical: they are scaled
to (0, 2] with max exactly 2 and act as quasi-random weights on an
even grid, paired with a compensating constant that absorbs their
non-uniform mean.  A gap file supplies the same construction with
externally recorded gaps.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .analytic import IntegralEstimate
from .montecarlo import _integrand
from .sieve import _twin_segments, sieve_primes

GAP_SOURCES = ("prime-gaps", "twin-gaps")

DEFAULT_COMPENSATING_CONSTANT = 7.39


@dataclass(frozen=True)
class LdsSequence:
    """A deterministic sequence with its provenance.

    points are radical-inverse values in [0, 1) for vdc sources and
    normalized gap weights in (0, 2] otherwise; raw_max is the largest
    raw gap before scaling (None for vdc).
    """

    points: tuple[float, ...]
    source: str
    raw_max: float | None = None

    def __len__(self) -> int:
        return len(self.points)


def van_der_corput(index: int, base: int = 2) -> float:
    """Radical inverse of a single nonnegative index in the given base."""
    if index < 0:
        raise ValueError("index must be nonnegative")
    if base < 2:
        raise ValueError("base must be >= 2")
    value = 0.0
    denom = 1.0
    i = index
    while i:
        denom *= base
        value += (i % base) / denom
        i //= base
    return value


def van_der_corput_sequence(count: int, base: int = 2) -> LdsSequence:
    """First count radical-inverse points, indices 1..count."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if base < 2:
        raise ValueError("base must be >= 2")
    work = np.arange(1, count + 1, dtype=np.int64)
    value = np.zeros(count, dtype=np.float64)
    denom = 1.0
    while work.any():
        denom *= base
        value += (work % base) / denom
        work //= base
    return LdsSequence(points=tuple(value.tolist()), source=f"vdc:{base}")


def _first_primes(count: int) -> np.ndarray:
    if count < 6:
        limit = 16
    else:
        # Rosser-style overestimate of the count-th prime
        limit = int(count * (math.log(count) + math.log(math.log(count)))) + 16
    while True:
        ps = list(itertools.islice(sieve_primes(limit), count))
        if len(ps) == count:
            return np.array(ps, dtype=np.int64)
        limit *= 2


def _first_twin_members(count: int) -> np.ndarray:
    k = max(count, 5)
    limit = int(2.0 * k * math.log(k) ** 2) + 128
    while True:
        got: list[np.ndarray] = []
        total = 0
        for lo, tw in _twin_segments(limit):
            idx = np.flatnonzero(tw)
            got.append(lo + 2 * idx.astype(np.int64))
            total += len(idx)
            if total >= count:
                break
        if total >= count:
            return np.concatenate(got)[:count]
        limit *= 2


def _normalize(gaps: np.ndarray) -> tuple[tuple[float, ...], float]:
    raw_max = float(gaps.max())
    # divide before doubling so the largest gap lands on exactly 2.0
    pts = (gaps.astype(np.float64) / raw_max) * 2.0
    return tuple(pts.tolist()), raw_max


def prime_gap_sequence(count: int, source: str = "prime-gaps") -> LdsSequence:
    """count consecutive gaps, scaled so the largest is exactly 2.

    ``prime-gaps`` differences the first count+1 primes; ``twin-gaps``
    differences the first count+1 twin pair smaller members.
    """
    if count < 2:
        raise ValueError("count must be >= 2")
    if source not in GAP_SOURCES:
        raise ValueError(f"source must be one of {GAP_SOURCES}")
    if source == "prime-gaps":
        vals = _first_primes(count + 1)
    else:
        vals = _first_twin_members(count + 1)
    pts, raw_max = _normalize(np.diff(vals))
    return LdsSequence(points=pts, source=source, raw_max=raw_max)


def load_sequence_file(path: str) -> LdsSequence:
    """Gap weights from a text file, one positive raw gap per line.

    Blank lines and lines starting with # are skipped; values are
    scaled exactly like the sieved gap sequences.
    """
    raw = []
    with open(path) as fh:
        for line_no, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                v = float(text)
            except ValueError:
                raise ValueError(f"{path}:{line_no}: not a number: {text!r}")
            if not v > 0:
                raise ValueError(f"{path}:{line_no}: gaps must be positive")
            raw.append(v)
    if len(raw) < 2:
        raise ValueError(f"{path}: need at least 2 gap values")
    pts, raw_max = _normalize(np.array(raw))
    return LdsSequence(points=pts, source="file", raw_max=raw_max)


def sequence_from_spec(token: str, count: int, path: str | None = None) -> LdsSequence:
    """Build a sequence from a command-line style token.

    Tokens: ``prime-gaps``, ``twin-gaps``, ``vdc`` or ``vdc:<base>``,
    or ``file`` together with a path.
    """
    if path is not None:
        return load_sequence_file(path)
    if token in GAP_SOURCES:
        return prime_gap_sequence(count, token)
    if token == "vdc" or token.startswith("vdc:"):
        base = int(token.split(":", 1)[1]) if ":" in token else 2
        return van_der_corput_sequence(count, base)
    raise ValueError(f"unknown sequence source {token!r}")


def star_discrepancy(points) -> float:
    """Exact one-dimensional star discrepancy of points in [0, 1)."""
    x = np.sort(np.asarray(points, dtype=np.float64))
    if len(x) == 0:
        raise ValueError("need at least one point")
    if x[0] < 0.0 or x[-1] >= 1.0:
        raise ValueError("points must lie in [0, 1)")
    n = len(x)
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(np.max(np.maximum(i / n - x, x - (i - 1.0) / n)))


def qmc_integral(n: float, sequence: LdsSequence,
                 compensating_constant: float = DEFAULT_COMPENSATING_CONSTANT
                 ) -> IntegralEstimate:
    """Deterministic estimate of I(n) from a sequence.

    vdc sources rescale their points into [2, n] and average the
    integrand; no compensating constant enters and the reported
    error_estimate is the Koksma bound, discrepancy times variation.

    Gap and file sources weight the integrand on an even grid over
    [2, n]: value = a * n/L * sum of f(x_i) s_i over i < L-1, with a
    the compensating constant.  No error bound exists for that
    construction, so error_estimate is NaN.
    """
    if not n >= 2.0:
        raise ValueError("n must be >= 2")
    L = len(sequence)
    if L < 2:
        raise ValueError("sequence needs at least 2 points")
    if n == 2.0:
        return IntegralEstimate(n=n, value=0.0, method="qmc_lds",
                                error_estimate=0.0,
                                meta={"source": sequence.source, "length": L})
    pts = np.asarray(sequence.points, dtype=np.float64)
    if sequence.source.startswith("vdc"):
        fx = _integrand(2.0 + (n - 2.0) * pts)
        value = (n - 2.0) * float(np.mean(fx))
        variation = float(_integrand(np.array([2.0]))[0]
                          - _integrand(np.array([n]))[0])
        bound = star_discrepancy(pts) * (n - 2.0) * variation
        return IntegralEstimate(n=n, value=value, method="qmc_lds",
                                error_estimate=bound,
                                meta={"source": sequence.source, "length": L})
    x = 2.0 + (n - 2.0) / (L - 1) * np.arange(L - 1, dtype=np.float64)
    fx = _integrand(x)
    value = compensating_constant * n / L * float(np.dot(fx, pts[:L - 1]))
    return IntegralEstimate(n=n, value=value, method="qmc_lds",
                            error_estimate=float("nan"),
                            meta={"source": sequence.source, "length": L,
                                  "compensating_constant": compensating_constant,
                                  "raw_max": sequence.raw_max})
