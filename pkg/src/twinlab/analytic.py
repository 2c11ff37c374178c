"""Analytic machinery for the twin prime density heuristic.

The integral I(n) = integral of dx / ln^2 x from 2 to n is evaluated
two independent ways:

* ``li_identity``  uses I(n) = li(n) - li(2) - n/ln n + 2/ln 2, with
  li computed from Ramanujan's exponentially convergent series.
* ``quadrature``   integrates e^u / u^2 in u = ln x with an adaptive
  Simpson rule over interval-doubling panels.

The prediction for the number of twin pairs below n is then
2 * C2 * I(n), where C2 is the twin prime constant, computed here from
its Euler product with a prime zeta tail correction so a small product
cutoff still gives full double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from .sieve import _simple_primes

EULER_GAMMA = 0.5772156649015328606065120900824024

# Empirical onset: smallest n (decade scan step 1e9) where the ratio
# I(n) ln^2 n / n falls at or below 1 + 2/ln n + 7/ln^2 n.  Below this
# the claimed upper bound is violated by the prediction itself.
RATIO_UPPER_ONSET = 4.9556e12


@dataclass(frozen=True)
class IntegralEstimate:
    """One evaluation of I(n), tagged with how it was produced.

    error_estimate is the method's own accuracy claim: a truncation or
    quadrature bound for the deterministic routes, one standard error
    for Monte Carlo, and NaN when no bound is available.
    """

    n: float
    value: float
    method: str
    error_estimate: float
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# twin prime constant

_BERNOULLI = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66)  # B_2 .. B_10

_MOBIUS = (0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0, -1, 1, 1, 0,
           -1, 0, -1, 0, 1, 1, -1, 0, 0, 1, 0, 0, -1, -1, -1, 0)


def zeta_minus_1(s: float, terms: int = 64) -> float:
    """zeta(s) - 1 for real s >= 2 by Euler-Maclaurin from k = 2.

    Summing k^-s for 2 <= k <= N and correcting with the standard tail
    N^(1-s)/(s-1) - N^-s/2 + Bernoulli terms keeps full relative
    precision even where zeta(s) - 1 is around 2^-s.
    """
    n = terms
    tot = math.fsum(float(k) ** (-s) for k in range(2, n + 1))
    tot += n ** (1.0 - s) / (s - 1.0) - 0.5 * n ** (-s)
    fact = s
    for j, bern in enumerate(_BERNOULLI, start=1):
        tot += bern / math.factorial(2 * j) * fact * n ** (-s - 2 * j + 1)
        fact *= (s + 2 * j - 1) * (s + 2 * j)
    return tot


def _log_zeta_above(s: float, primes: np.ndarray) -> float:
    """ln zeta(s) with the Euler factors of the given primes removed."""
    return math.log1p(zeta_minus_1(s)) + float(np.sum(np.log1p(-primes ** (-s))))


def _prime_zeta_above(n: float, primes: np.ndarray) -> float:
    """Sum of p^-n over primes beyond the given list, via Moebius inversion."""
    tot = 0.0
    k = 1
    while k * n <= 64 and k < len(_MOBIUS):
        mu = _MOBIUS[k]
        if mu:
            tot += mu / k * _log_zeta_above(k * n, primes)
        k += 1
    return tot


_C2_CACHE: dict[int, float] = {}


def twin_prime_constant(tolerance: float = 1e-12) -> float:
    """The constant C2 = prod over odd primes of (1 - (p-1)^-2).

    The product is taken directly over odd p <= 10^4 and the remainder
    ln prod_{p > P} (1 - (p-1)^-2) = -sum_{n>=2} (2^n - 2)/n * P_{>P}(n)
    + O(P^-3) is restored through the truncated prime zeta function.
    The n sum is cut when the analytic term bound (2^n/n)(2/P)^(n-1)/ln P
    drops below 1e-18, which leaves a truncation error orders of
    magnitude below any admissible tolerance.

    tolerance must lie in [1e-15, 1e-3] and is the certified accuracy
    of the returned value.
    """
    if not 1e-15 <= tolerance <= 1e-3:
        raise ValueError("tolerance must lie in [1e-15, 1e-3]")
    cutoff = 10_000
    cached = _C2_CACHE.get(cutoff)
    if cached is not None:
        return cached
    primes = _simple_primes(cutoff).astype(np.float64)
    odd = primes[1:]
    log_c2 = float(np.sum(np.log1p(-1.0 / (odd - 1.0) ** 2)))
    tail = 0.0
    n = 2
    while n <= 20:
        bound = (2.0 ** n / n) * (2.0 / cutoff) ** (n - 1) / math.log(cutoff)
        if bound < 1e-18:
            break
        tail -= (2.0 ** n - 2.0) / n * _prime_zeta_above(float(n), primes)
        n += 1
    value = math.exp(log_c2 + tail)
    _C2_CACHE[cutoff] = value
    return value


# ---------------------------------------------------------------------------
# logarithmic integral, series route

def li(x: float) -> float:
    """Logarithmic integral li(x) for x > 1 (principal value across t = 1).

    Ramanujan's series

        li(x) = gamma + ln ln x
              + sqrt(x) * sum_{n>=1} (-1)^(n-1) (ln x)^n / (n! 2^(n-1))
                          * sum_{k <= (n-1)/2} 1/(2k+1)

    converges like (ln x / 2)^n / n!, so the loop is cut once n exceeds
    ln x and the term has dropped below 1e-18 of the partial sum.
    """
    if not x > 1.0:
        raise ValueError("li requires x > 1")
    lx = math.log(x)
    terms = []
    fac = 1.0
    powl = 1.0
    pow2 = 1.0
    inner = 0.0
    acc = 0.0
    n = 0
    while n < 400:
        n += 1
        fac *= n
        powl *= lx
        if n > 1:
            pow2 *= 2.0
        if n % 2 == 1:
            inner += 1.0 / n
        t = powl / (fac * pow2) * inner
        if n % 2 == 0:
            t = -t
        terms.append(t)
        acc += t
        if n > lx and abs(t) < 1e-18 * abs(acc):
            break
    return EULER_GAMMA + math.log(lx) + math.sqrt(x) * math.fsum(terms)


# ---------------------------------------------------------------------------
# adaptive Simpson quadrature

def _simpson(a: float, b: float, fa: float, fm: float, fb: float) -> float:
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb)


def _adaptive(f, a, b, fa, fm, fb, whole, tol, depth):
    m = 0.5 * (a + b)
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    flm = f(lm)
    frm = f(rm)
    left = _simpson(a, m, fa, flm, fm)
    right = _simpson(m, b, fm, frm, fb)
    delta = left + right - whole
    if depth <= 0 or abs(delta) <= 15.0 * tol:
        # Richardson extrapolation; delta/15 is the local error estimate
        return left + right + delta / 15.0, abs(delta) / 15.0
    lval, lerr = _adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
    rval, rerr = _adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    return lval + rval, lerr + rerr


def adaptive_simpson(f: Callable[[float], float], a: float, b: float,
                     rel_tol: float = 1e-12, max_depth: int = 30) -> tuple[float, float]:
    """Adaptive Simpson integral of f over [a, b].

    Returns (value, error_estimate).  The tolerance is relative to the
    first whole-interval estimate, so panels of any magnitude get a
    comparable number of refinement levels.
    """
    if not b >= a:
        raise ValueError("need b >= a")
    if a == b:
        return 0.0, 0.0
    fa = f(a)
    fm = f(0.5 * (a + b))
    fb = f(b)
    whole = _simpson(a, b, fa, fm, fb)
    tol = rel_tol * max(abs(whole), 1e-300)
    return _adaptive(f, a, b, fa, fm, fb, whole, tol, max_depth)


def _pv_fold(s: float) -> float:
    """1/ln(1+s) + 1/ln(1-s): the fold of dt/ln t about the pole t = 1.

    The 1/s singularities cancel; near s = 0 the even Taylor series is
    used to avoid the cancellation.  At s = 1 the second leg vanishes.
    """
    if s >= 1.0:
        return 1.0 / math.log1p(s)
    if s < 0.05:
        s2 = s * s
        return 1.0 + s2 * (1.0 / 12.0 + s2 * (3.0 / 80.0 + s2 * (
            275.0 / 12096.0 + s2 * (8183.0 / 518400.0))))
    return 1.0 / math.log1p(s) + 1.0 / math.log1p(-s)


def _log_panels(a: float, b: float) -> list[tuple[float, float]]:
    """Interval-doubling panels in log space covering [a, b], a >= 2."""
    out = []
    lo = a
    while lo < b:
        hi = min(lo * lo, b)
        out.append((lo, hi))
        lo = hi
    return out


def li_quadrature(x: float, rel_tol: float = 1e-12) -> float:
    """li(x) by direct quadrature, independent of the series route.

    The principal value across t = 1 is handled by folding the
    integrand: for x >= 2,

        li(x) = int_0^1 [1/ln(1+s) + 1/ln(1-s)] ds + int_2^x dt/ln t,

    and the second integral is done as e^u/u in u = ln t over doubling
    panels.  For 1 < x < 2 the fold stops at s = x-1 and the leftover
    piece [0, 2-x] is regular.
    """
    if not x > 1.0:
        raise ValueError("li_quadrature requires x > 1")
    if x >= 2.0:
        head, head_err = adaptive_simpson(_pv_fold, 0.0, 1.0, rel_tol)
        if x == 2.0:
            return head
        tail, tail_err = adaptive_simpson(
            lambda u: math.exp(u) / u, math.log(2.0), math.log(x), rel_tol)
        total = head + tail
        if tail_err + head_err > 16 * rel_tol * abs(total):
            raise ArithmeticError("quadrature failed to reach tolerance")
        return total
    head, _ = adaptive_simpson(_pv_fold, 0.0, x - 1.0, rel_tol)
    stub, _ = adaptive_simpson(lambda t: 1.0 / math.log(t) if t > 0 else 0.0,
                               0.0, 2.0 - x, rel_tol)
    return head + stub


# ---------------------------------------------------------------------------
# the density integral

_LI2_CACHE: list[float] = []


def _li2() -> float:
    if not _LI2_CACHE:
        _LI2_CACHE.append(li(2.0))
    return _LI2_CACHE[0]


def hl_integral(n: float, method: str = "li_identity",
                rel_tol: float = 1e-12) -> IntegralEstimate:
    """I(n) = integral of dx / ln^2 x from 2 to n.

    method selects the route:

    * ``li_identity``: I(n) = li(n) - li(2) - n/ln n + 2/ln 2, exact up
      to the series truncation of li.
    * ``quadrature``: adaptive Simpson on e^u / u^2, u = ln x, over
      doubling panels; fully independent of the li code path.

    n = 2 gives exactly 0 under both methods.
    """
    if not n >= 2.0:
        raise ValueError("n must be >= 2")
    if method not in ("li_identity", "quadrature"):
        raise ValueError(f"unknown method {method!r}")
    if n == 2.0:
        return IntegralEstimate(n=2.0, value=0.0, method=method,
                                error_estimate=0.0)
    if method == "li_identity":
        value = li(n) - _li2() - n / math.log(n) + 2.0 / math.log(2.0)
        return IntegralEstimate(n=float(n), value=value, method=method,
                                error_estimate=4e-15 * abs(value),
                                meta={"terms": "ramanujan series"})
    total = 0.0
    err = 0.0
    for lo, hi in _log_panels(2.0, float(n)):
        val, e = adaptive_simpson(lambda u: math.exp(u) / (u * u),
                                  math.log(lo), math.log(hi), rel_tol)
        total += val
        err += e
    return IntegralEstimate(n=float(n), value=total, method=method,
                            error_estimate=err,
                            meta={"panels": len(_log_panels(2.0, float(n)))})


def hl_prediction(n: float) -> float:
    """Predicted twin pair count below n: 2 * C2 * I(n)."""
    return 2.0 * twin_prime_constant() * hl_integral(n).value


# ---------------------------------------------------------------------------
# asymptotic expansion and ratio bounds

class DivergentExpansionError(ValueError):
    """Requested expansion order is past the divergence onset.

    optimal_k_terms holds the largest admissible order for this n,
    where the terms are still decreasing.
    """

    def __init__(self, n: float, k_terms: int, optimal: int):
        self.optimal_k_terms = optimal
        super().__init__(
            f"expansion of order {k_terms} diverges at n={n:g}: "
            f"term ratio (k+1)/ln n reaches 1; largest admissible "
            f"k_terms is {optimal}")


def poincare_expansion(n: float, k_terms: int) -> tuple[float, float]:
    """Truncated asymptotic expansion of li(n) with its first dropped term.

    li(n) ~ n * sum_{j>=0} j! / ln(n)^(j+1).  Returns the sum of the
    first k_terms terms and the value of term k_terms + 1.  The series
    is asymptotic, not convergent: the term ratio is (j+1)/ln n, so
    orders with k_terms + 1 >= ln n are refused (the next term would no
    longer shrink) and the error reports the largest usable order.
    """
    if not n > math.e ** 2:
        raise ValueError("expansion needs n > e^2")
    if k_terms < 1:
        raise ValueError("k_terms must be >= 1")
    ln = math.log(n)
    if k_terms + 1 >= ln:
        raise DivergentExpansionError(n, k_terms, max(1, math.ceil(ln) - 2))
    terms = []
    t = n / ln
    for j in range(k_terms):
        terms.append(t)
        t *= (j + 1) / ln
    return math.fsum(terms), t


class RatioBounds(NamedTuple):
    lower: float
    upper: float
    ratio: float
    holds: bool


def ratio_bounds_check(n: float) -> RatioBounds:
    """Check 1 < I(n) ln^2 n / n <= 1 + 2/ln n + 7/ln^2 n.

    The claimed window for the normalized prediction, asserted from
    n = 10^12 up.  The lower bound holds throughout; the upper bound
    only begins to hold near n = 5e12 (see RATIO_UPPER_ONSET), so
    holds is reported honestly rather than assumed.
    """
    if not n >= 1e12:
        raise ValueError("bound is asserted for n >= 1e12")
    ln = math.log(n)
    ratio = hl_integral(n).value * ln * ln / n
    upper = 1.0 + 2.0 / ln + 7.0 / (ln * ln)
    holds = 1.0 < ratio <= upper
    return RatioBounds(lower=1.0, upper=upper, ratio=ratio, holds=holds)
