"""Command line interface: ``simulate``, ``figure``, ``oracle-check`` and ``sweep``."""

from __future__ import annotations

import argparse
import json
import sys

from . import cli_io
from .errors import CKError


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value file; flags override it")
    p.add_argument("--preset", choices=[*cli_io.PRESETS, "custom"])
    p.add_argument("--omega-over-lambda", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--epsilon-delta", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--mu", type=float)
    p.add_argument("--grid", type=str, help="start:end:count in omega*t (default 0:10:1001)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ckwork", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="tabulate the series of the chosen engines")
    _add_common(sim)
    sim.add_argument("--engines", help=f"comma-separated subset of {','.join(cli_io.ENGINES)}")
    sim.add_argument("--oracle", action="store_true", default=None,
                     help="also run the oracle suite and embed its report in the metadata")

    fig = sub.add_parser("figure", help="reproduce one figure series")
    fig.add_argument("figure_id", choices=sorted(cli_io.FIGURES))
    _add_common(fig)

    chk = sub.add_parser("oracle-check", help="run the independent oracle suite")
    _add_common(chk)
    chk.add_argument("--samples", type=int, help="Monte Carlo samples (default 1e6)")
    chk.add_argument("--no-monte-carlo", action="store_true")

    sw = sub.add_parser("sweep", help="one quantity for several values of one parameter")
    _add_common(sw)
    sw.add_argument("--param", required=True, choices=cli_io.SWEEP_PARAMS)
    sw.add_argument("--values", required=True, help="comma-separated values")
    sw.add_argument("--quantity", default="W_q", choices=sorted(cli_io.COLUMNS))
    return parser


def _config(args) -> cli_io.RunConfig:
    file_values = cli_io.read_config(args.config) if args.config else {}
    flags = dict(preset=args.preset, omega_over_lambda=args.omega_over_lambda,
                 epsilon=args.epsilon, epsilon_delta=args.epsilon_delta, theta=args.theta,
                 mu=args.mu, seed=args.seed, out=args.out,
                 grid=cli_io.GridRange.parse(args.grid) if args.grid else None)
    if getattr(args, "engines", None):
        flags["engines"] = tuple(e.strip() for e in args.engines.split(",") if e.strip())
    if getattr(args, "oracle", None):
        flags["oracle"] = True
    if getattr(args, "samples", None) is not None:
        flags["samples"] = args.samples
    return cli_io.make_config(file_values, **flags)


def _emit(text: str, cfg: cli_io.RunConfig, meta: dict | None) -> None:
    if cfg.out:
        cli_io.write_outputs(cfg.out, text, meta)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "simulate":
            sc = cfg.scenario()
            series = cli_io.build_series(sc, cfg, cli_io.simulate_columns(sc, cfg), "simulate")
            meta = series.metadata
            status = 0
            if cfg.oracle:
                report = cli_io.oracle_suite(cfg)
                meta = {**meta, "oracle": report}
                status = 0 if report["passed"] else 1
            _emit(cli_io.format_csv(series), cfg, meta)
            return status
        if args.command == "figure":
            explicit = args.preset is not None or (
                args.config is not None and "preset" in cli_io.read_config(args.config))
            cfg = cli_io.figure_config(args.figure_id, cfg, explicit)
            sc = cfg.scenario()
            fig = cli_io.FIGURES[args.figure_id]
            series = cli_io.build_series(sc, cfg, fig.columns, "figure",
                                         {"figure": args.figure_id, "title": fig.title})
            _emit(cli_io.format_csv(series), cfg, series.metadata)
            return 0
        if args.command == "oracle-check":
            report = cli_io.oracle_suite(cfg, include_monte_carlo=not args.no_monte_carlo)
            _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", cfg, None)
            return 0 if report["passed"] else 1
        if args.command == "sweep":
            try:
                values = [float(v) for v in args.values.split(",") if v.strip()]
            except ValueError as exc:
                raise cli_io.RejectedParams(f"values: {exc}") from None
            series = cli_io.sweep_series(cfg, args.param, values, args.quantity)
            _emit(cli_io.format_csv(series), cfg, series.metadata)
            return 0
    except CKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
