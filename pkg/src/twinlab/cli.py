"""Command line front end.

Exit codes: 0 on success, 2 for invalid arguments or values, 3 for an
unexpected runtime failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import lds as lds_mod
from . import report as report_mod
from .analytic import hl_integral
from .brun import brun_series
from .montecarlo import McConfig, convergence_study, mc_integral
from .sieve import census
from .stats import proportion_series


def _int_arg(text: str) -> int:
    value = float(text)
    if int(value) != value:
        # ValueError doubles as an argparse type error and an exit-2
        # condition when parsing happens inside a handler
        raise ValueError(f"not an integer: {text!r}")
    return int(value)


def _int_list(text: str) -> list[int]:
    return [_int_arg(part) for part in text.split(",") if part]


def _checkpoints(args) -> list[int] | None:
    if args.checkpoints == "decades":
        return None
    return _int_list(args.checkpoints)


def _threads(args) -> int:
    if args.threads == "auto":
        return os.cpu_count() or 1
    n = int(args.threads)
    if n < 1:
        raise ValueError("threads must be >= 1 or 'auto'")
    return n


def _write(text: str, out: str) -> None:
    if out in ("-", "stdout"):
        sys.stdout.write(text)
        return
    with open(out, "w") as fh:
        fh.write(text)


def _proportions_with_notices(table):
    """Run proportion_series, forwarding its skip warnings to stderr."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        props = proportion_series(table)
    for w in caught:
        print(f"notice: {w.message}", file=sys.stderr)
    return props


def _cmd_census(args) -> None:
    table = census(args.limit, _checkpoints(args), threads=_threads(args))
    _write(report_mod.render_census(table, args.format), args.out)


def _cmd_classes(args) -> None:
    table = census(args.limit, _checkpoints(args), threads=_threads(args))
    props = _proportions_with_notices(table)
    _write(report_mod.render_proportions(table, props, args.format), args.out)


def _cmd_integral(args) -> None:
    points = _checkpoints(args) or [args.limit]
    method = args.method.replace("-", "_")
    rows = [hl_integral(float(n), method) for n in points]
    _write(report_mod.render_integrals(rows, args.format), args.out)


def _cmd_mc(args) -> None:
    if args.study:
        if not args.ladder:
            raise ValueError("--study needs --ladder")
        seeds = range(args.seed, args.seed + args.study_seeds)
        study = convergence_study(float(args.limit), _int_list(args.ladder),
                                  seeds, threads=_threads(args))
        _write(report_mod.render_study(study, args.format), args.out)
        return
    config = McConfig(n=float(args.limit), samples=args.samples,
                      seed=args.seed, mode=args.mode)
    est = mc_integral(config, threads=_threads(args))
    _write(report_mod.render_estimates([(est, args.mode)], args.format),
           args.out)


def _cmd_qmc(args) -> None:
    sequence = lds_mod.sequence_from_spec(args.lds, args.samples,
                                          args.lds_file)
    est = lds_mod.qmc_integral(float(args.limit), sequence, args.comp_const)
    _write(report_mod.render_estimates([(est, sequence.source)], args.format),
           args.out)


def _cmd_brun(args) -> None:
    sums = brun_series(args.limit, _checkpoints(args))
    _write(report_mod.render_brun(sums, args.format), args.out)


def _cmd_report(args) -> None:
    threads = _threads(args)
    cps = _checkpoints(args)
    table = census(args.limit, cps, threads=threads)
    rows = report_mod.run_report(
        args.limit, cps, samples=args.samples, seed=args.seed,
        lds=args.lds, lds_file=args.lds_file,
        compensating_constant=args.comp_const, threads=threads, table=table)
    _write(report_mod.render_comparison(rows, args.format), args.out)
    props = sums = None
    if args.classes_out:
        props = _proportions_with_notices(table)
        _write(report_mod.render_proportions(table, props, args.format),
               args.classes_out)
    if args.brun_out:
        sums = brun_series(args.limit, cps)
        _write(report_mod.render_brun(sums, args.format), args.brun_out)
    if args.figures:
        from . import figures
        if props is None:
            props = _proportions_with_notices(table)
        if sums is None:
            sums = brun_series(args.limit, cps)
        for path in figures.render_all(rows, props, sums, args.figures):
            print(path, file=sys.stderr)


def _add_output_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (default csv)")
    p.add_argument("--out", default="-", metavar="PATH",
                   help="output path, - for stdout")


def _add_scan_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--limit", type=_int_arg, required=True,
                   help="upper end of the scan")
    p.add_argument("--checkpoints", default="decades", metavar="SPEC",
                   help="'decades' or comma separated values (default decades)")


def _add_sequence_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lds", default=report_mod.DEFAULT_LDS, metavar="SOURCE",
                   help="sequence source: prime-gaps, twin-gaps or "
                        "vdc:<base> (default %(default)s)")
    p.add_argument("--lds-file", metavar="PATH",
                   help="gap file, one positive value per line; overrides --lds")
    p.add_argument("--comp-const", type=float,
                   default=lds_mod.DEFAULT_COMPENSATING_CONSTANT,
                   help="compensating constant for gap sources "
                        "(default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twinlab",
        description="Twin prime census, density predictions and checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="pair counts by residue class")
    _add_scan_flags(p)
    p.add_argument("--threads", default="1", help="worker threads or 'auto'")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("classes", help="class proportions and chi square")
    _add_scan_flags(p)
    p.add_argument("--threads", default="1", help="worker threads or 'auto'")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("integral", help="deterministic density integral")
    _add_scan_flags(p)
    p.add_argument("--method", choices=("li-identity", "quadrature"),
                   default="li-identity")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_integral)

    p = sub.add_parser("mc", help="Monte Carlo integral estimate")
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--samples", type=_int_arg, default=report_mod.DEFAULT_SAMPLES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("uniform", "annex-stratified"),
                   default="uniform")
    p.add_argument("--study", action="store_true",
                   help="emit a convergence study over --ladder instead")
    p.add_argument("--ladder", metavar="LIST",
                   help="comma separated sample counts for --study")
    p.add_argument("--study-seeds", type=int, default=32,
                   help="number of seeds for --study (default %(default)s)")
    p.add_argument("--threads", default="1", help="worker threads or 'auto'")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_mc)

    p = sub.add_parser("qmc", help="deterministic sequence estimate")
    p.add_argument("--limit", type=_int_arg, required=True)
    p.add_argument("--samples", type=_int_arg, default=report_mod.DEFAULT_SAMPLES)
    _add_sequence_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_qmc)

    p = sub.add_parser("brun", help="partial twin reciprocal sums")
    _add_scan_flags(p)
    _add_output_flags(p)
    p.set_defaults(func=_cmd_brun)

    p = sub.add_parser("report", help="census vs analytic, MC and sequence estimates")
    _add_scan_flags(p)
    p.add_argument("--samples", type=_int_arg, default=report_mod.DEFAULT_SAMPLES,
                   help="samples / sequence length (default %(default)s)")
    p.add_argument("--seed", type=int, default=0)
    _add_sequence_flags(p)
    p.add_argument("--threads", default="1", help="worker threads or 'auto'")
    p.add_argument("--figures", metavar="DIR",
                   help="also render figures into this directory")
    p.add_argument("--classes-out", metavar="PATH",
                   help="also write the class proportion table here")
    p.add_argument("--brun-out", metavar="PATH",
                   help="also write the reciprocal sum table here")
    _add_output_flags(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3
    return 0
