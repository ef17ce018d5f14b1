"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on numerical or
verification failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .matcore import NumericalError
from .measures import OptimizerOptions, analyze
from .plotting import DEFAULT_SERIES, PlotError, emit_svg_plot, render_figure
from .states import werner_state
from .sweep import (
    PRESETS,
    SweepConfig,
    SweepError,
    emit_csv,
    emit_json,
    parse_values,
    preset_config,
    read_csv,
    run_sweep,
)
from .verify import verify

EXIT_OK, EXIT_USAGE, EXIT_NUMERICAL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_optimizer_args(p):
    p.add_argument("--grid", type=int, default=64, help="coarse grid points per angle (default 64)")
    p.add_argument("--tol", type=float, default=1e-9, help="refinement tolerance on the entropy")


def _options(args) -> OptimizerOptions:
    return OptimizerOptions(n_theta=args.grid, n_phi=args.grid, tol=args.tol)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quasiwerner", description="Discord and concurrence of Werner-type squeezed states.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("sweep", help="tabulate correlations over an (a, r) grid")
    p.add_argument("--family", choices=("perfect", "quasi"), required=True)
    p.add_argument("--a", required=True, help="start:stop:step or comma list")
    p.add_argument("--r", help="start:stop:step or comma list (quasi only)")
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_optimizer_args(p)

    p = sub.add_parser("plot", help="draw an SVG from a sweep CSV")
    p.add_argument("--in", dest="inp", required=True, type=Path)
    p.add_argument("--axis", choices=("a", "r"), required=True)
    p.add_argument("--out", required=True, type=Path)
    p.add_argument("--series", default=",".join(DEFAULT_SERIES), help="comma-separated columns")

    p = sub.add_parser("point", help="analyze a single state")
    p.add_argument("--family", choices=("perfect", "quasi"), required=True)
    p.add_argument("--a", required=True, type=float)
    p.add_argument("--r", type=float)
    p.add_argument("--json", action="store_true")
    _add_optimizer_args(p)

    p = sub.add_parser("verify", help="run the oracle cross-checks")
    p.add_argument("--full", action="store_true", help="include the 1024x1024 grid oracle")

    p = sub.add_parser("preset", help="reproduce one of the reference figures")
    p.add_argument("name", choices=sorted(PRESETS))
    p.add_argument("--out-dir", required=True, type=Path)
    p.add_argument("--no-png", action="store_true", help="skip the matplotlib rendering")
    p.add_argument("--jobs", type=int, default=1)
    _add_optimizer_args(p)
    return parser


def _cmd_sweep(args) -> int:
    try:
        config = SweepConfig(
            family=args.family,
            a_values=parse_values(args.a),
            r_values=parse_values(args.r) if args.r else (),
            options=_options(args),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    table = run_sweep(config, workers=args.jobs)
    (emit_json if args.format == "json" else emit_csv)(table, args.out)
    print(f"wrote {len(table)} rows to {args.out}")
    return EXIT_OK


def _cmd_plot(args) -> int:
    try:
        table = read_csv(args.inp)
        emit_svg_plot(table, args.out, axis=args.axis, series=args.series.split(","))
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_point(args) -> int:
    try:
        rho = werner_state(args.family, args.a, args.r)
        opts = _options(args)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rep = analyze(rho, opts)
    record = {"a": args.a, "r": args.r if args.family == "quasi" else None}
    record.update(
        concurrence=rep.concurrence,
        discord=rep.discord,
        mutual_information=rep.mutual_information,
        classical_correlation=rep.classical_correlation,
        theta_star=rep.theta_star,
        phi_star=rep.phi_star,
    )
    if args.json:
        print(json.dumps(record))
    else:
        for k, v in record.items():
            print(f"{k:>22}: {'' if v is None else f'{v:.12g}'}")
    return EXIT_OK


def _cmd_preset(args) -> int:
    config, axis = preset_config(args.name, _options(args))
    args.out_dir.mkdir(parents=True, exist_ok=True)
    table = run_sweep(config, workers=args.jobs)
    stem = args.out_dir / args.name
    written = [emit_csv(table, stem.with_suffix(".csv")), emit_svg_plot(table, stem.with_suffix(".svg"), axis)]
    if not args.no_png:
        written.append(render_figure(table, stem.with_suffix(".png"), axis))
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


COMMANDS = {
    "sweep": _cmd_sweep,
    "plot": _cmd_plot,
    "point": _cmd_point,
    "verify": lambda args: verify(full=args.full),
    "preset": _cmd_preset,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, PlotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SweepError, NumericalError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
