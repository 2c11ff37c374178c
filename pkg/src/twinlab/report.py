"""Comparison tables and their delimited renderings.

Every table here serializes to CSV and JSON with fixed float formats:
CSV uses %.5e (compact, diff friendly), JSON uses %.9e.  JSON is
emitted by hand so the float format is identical across platforms; the
output is a plain array of objects and parses with any JSON reader.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from . import lds as lds_mod
from .analytic import hl_integral, twin_prime_constant
from .brun import BrunSum
from .montecarlo import ConvergenceStudy, McConfig, mc_integral
from .sieve import CensusTable, census
from .stats import ProportionRow, chi_square_uniform

CSV_FLOAT = "%.5e"
JSON_FLOAT = "%.9e"

DEFAULT_SAMPLES = 17548
DEFAULT_LDS = "vdc:2"


@dataclass(frozen=True)
class ComparisonRow:
    """One checkpoint of the census against three estimates of it."""

    n: int
    pi2: int
    hl_pred: float
    hl_err_pct: float
    mc: float
    mc_err_pct: float
    lds: float
    lds_err_pct: float


def _err_pct(count: int, value: float) -> float:
    if count == 0:
        return float("nan")
    return 100.0 * abs(count - value) / count


def run_report(limit: int, checkpoints: Sequence[int] | None = None,
               samples: int = DEFAULT_SAMPLES, seed: int = 0,
               lds: str = DEFAULT_LDS, lds_file: str | None = None,
               compensating_constant: float = lds_mod.DEFAULT_COMPENSATING_CONSTANT,
               threads: int = 1,
               table: CensusTable | None = None) -> list[ComparisonRow]:
    """Census counts next to the analytic, Monte Carlo and sequence estimates.

    All three estimate columns are on the pair-count scale, twice the
    twin prime constant times the respective integral estimate.  The
    Monte Carlo column uses uniform sampling with the given seed; the
    sequence column uses the source token (see lds.sequence_from_spec),
    with the compensating constant applied only to gap sources.

    A precomputed census table for the same limit and checkpoints can
    be passed to avoid sieving twice.
    """
    if table is None:
        table = census(limit, checkpoints, threads=threads)
    scale = 2.0 * twin_prime_constant()
    sequence = lds_mod.sequence_from_spec(lds, samples, lds_file)
    rows = []
    for crow in table.rows:
        n = float(crow.n)
        hl = scale * hl_integral(n).value
        mc_est = scale * mc_integral(McConfig(n=n, samples=samples, seed=seed),
                                     threads=threads).value
        lds_est = scale * lds_mod.qmc_integral(
            n, sequence, compensating_constant).value
        rows.append(ComparisonRow(
            n=crow.n, pi2=crow.pi2,
            hl_pred=hl, hl_err_pct=_err_pct(crow.pi2, hl),
            mc=mc_est, mc_err_pct=_err_pct(crow.pi2, mc_est),
            lds=lds_est, lds_err_pct=_err_pct(crow.pi2, lds_est)))
    return rows


# ---------------------------------------------------------------------------
# delimited output

def _fmt_csv(value) -> str:
    if isinstance(value, bool):
        raise TypeError("no boolean table cells")
    if isinstance(value, int):
        return str(value)
    if value is None:
        return ""
    if isinstance(value, float):
        return CSV_FLOAT % value
    return str(value)


def _fmt_json(value) -> str:
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    if value is None:
        return "null"
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            return json.dumps(value)  # NaN / Infinity, json module spelling
        return JSON_FLOAT % value
    return json.dumps(value)


def _table_csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt_csv(v) for v in row))
    return "\n".join(lines) + "\n"


def _table_json(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    if not rows:
        return "[]\n"
    body = []
    for row in rows:
        cells = ", ".join(f"{json.dumps(k)}: {_fmt_json(v)}"
                          for k, v in zip(header, row))
        body.append("  {" + cells + "}")
    return "[\n" + ",\n".join(body) + "\n]\n"


def _render(header, rows, fmt: str) -> str:
    if fmt == "csv":
        return _table_csv(header, rows)
    if fmt == "json":
        return _table_json(header, rows)
    raise ValueError(f"unknown format {fmt!r}")


COMPARISON_HEADER = ("n", "pi2", "hl_pred", "hl_err_pct",
                     "mc", "mc_err_pct", "lds", "lds_err_pct")


def render_comparison(rows: Sequence[ComparisonRow], fmt: str = "csv") -> str:
    data = [(r.n, r.pi2, r.hl_pred, r.hl_err_pct, r.mc, r.mc_err_pct,
             r.lds, r.lds_err_pct) for r in rows]
    return _render(COMPARISON_HEADER, data, fmt)


CENSUS_HEADER = ("n", "pi2", "c1", "c7", "c9", "exceptional")


def render_census(table: CensusTable, fmt: str = "csv") -> str:
    return _render(CENSUS_HEADER, [tuple(r) for r in table.rows], fmt)


PROPORTIONS_HEADER = ("n", "p1", "p7", "p9", "chi2", "p_value")


def render_proportions(table: CensusTable, rows: Sequence[ProportionRow],
                       fmt: str = "csv") -> str:
    by_n = {r.n: r for r in table.rows}
    data = []
    for p in rows:
        crow = by_n[p.n]
        chi = chi_square_uniform((crow.c1, crow.c7, crow.c9))
        data.append((p.n, p.p1, p.p7, p.p9, chi.statistic, chi.p_value))
    return _render(PROPORTIONS_HEADER, data, fmt)


BRUN_HEADER = ("limit", "r", "last_q", "brun_sum")


def render_brun(sums: Sequence[BrunSum], fmt: str = "csv") -> str:
    data = [(b.limit, b.pair_count, b.last_q, b.value) for b in sums]
    return _render(BRUN_HEADER, data, fmt)


STUDY_HEADER = ("N", "mean_rel_err", "fitted_slope")


def render_study(study: ConvergenceStudy, fmt: str = "csv") -> str:
    data = [(n, err, study.slope) for n, err in study.rows]
    return _render(STUDY_HEADER, data, fmt)


INTEGRAL_HEADER = ("n", "integral", "error_estimate", "hl_pred")


def render_integrals(rows, fmt: str = "csv") -> str:
    scale = 2.0 * twin_prime_constant()
    data = [(int(e.n), e.value, e.error_estimate, scale * e.value)
            for e in rows]
    return _render(INTEGRAL_HEADER, data, fmt)


ESTIMATE_HEADER = ("n", "samples", "source", "integral", "stderr", "scaled")


def render_estimates(rows, fmt: str = "csv") -> str:
    """Rows of (IntegralEstimate, source string) from the mc/qmc paths."""
    scale = 2.0 * twin_prime_constant()
    data = [(int(e.n), e.meta.get("samples", e.meta.get("length")), src,
             e.value, e.error_estimate, scale * e.value)
            for e, src in rows]
    return _render(ESTIMATE_HEADER, data, fmt)
