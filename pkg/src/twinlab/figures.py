"""Figure rendering for report runs.  Import cost is deferred: the Agg
backend is forced here so the CLI never needs a display."""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .brun import BrunSum  # noqa: E402
from .report import ComparisonRow  # noqa: E402
from .stats import ProportionRow  # noqa: E402


def comparison_figure(rows: Sequence[ComparisonRow], path: str) -> str:
    """Counts and estimates (top) and their percent errors (bottom)."""
    fig, (ax0, ax1) = plt.subplots(2, 1, figsize=(7.2, 7.4), sharex=True)
    n = [r.n for r in rows]
    ax0.loglog(n, [r.pi2 for r in rows], "ko-", label="census")
    ax0.loglog(n, [r.hl_pred for r in rows], "C0s--", label="analytic")
    ax0.loglog(n, [r.mc for r in rows], "C1^--", label="monte carlo")
    ax0.loglog(n, [r.lds for r in rows], "C2v--", label="sequence")
    ax0.set_ylabel("twin pairs below n")
    ax0.legend(frameon=False)
    for key, mark, color in (("hl_err_pct", "s", "C0"),
                             ("mc_err_pct", "^", "C1"),
                             ("lds_err_pct", "v", "C2")):
        ax1.loglog(n, [getattr(r, key) for r in rows],
                   mark + "--", color=color)
    ax1.set_xlabel("n")
    ax1.set_ylabel("relative error, %")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def proportions_figure(rows: Sequence[ProportionRow], path: str) -> str:
    """Residue class shares against the even split."""
    fig, ax = plt.subplots(figsize=(7.2, 4.4))
    n = [r.n for r in rows]
    ax.semilogx(n, [r.p1 for r in rows], "o-", label="ends in 1")
    ax.semilogx(n, [r.p7 for r in rows], "s-", label="ends in 7")
    ax.semilogx(n, [r.p9 for r in rows], "^-", label="ends in 9")
    ax.axhline(1.0 / 3.0, color="k", lw=0.8, ls=":")
    ax.set_xlabel("n")
    ax.set_ylabel("share of classed pairs")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def brun_figure(sums: Sequence[BrunSum], path: str) -> str:
    """Partial reciprocal sums flattening toward their limit."""
    fig, ax = plt.subplots(figsize=(7.2, 4.4))
    ax.semilogx([b.limit for b in sums], [b.value for b in sums], "o-")
    ax.set_xlabel("limit")
    ax.set_ylabel("sum of twin reciprocals")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_all(rows: Sequence[ComparisonRow], props: Sequence[ProportionRow],
               sums: Sequence[BrunSum], out_dir: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    out = []
    if rows:
        out.append(comparison_figure(rows, os.path.join(out_dir, "comparison.png")))
    if props:
        out.append(proportions_figure(props, os.path.join(out_dir, "proportions.png")))
    if sums:
        out.append(brun_figure(sums, os.path.join(out_dir, "brun.png")))
    return out
