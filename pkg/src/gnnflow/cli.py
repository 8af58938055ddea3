"""Command-line interface.

Subcommands: evaluate (one breakdown), sweep (series plus optional SVG),
compare (both accelerators side by side), validate (step-oracle
cross-check), energy (hierarchy-weighted movement cost). The environment
variable GNNFLOW_CONFIG names a default config file; command-line flags
always win over file values.
"""

from __future__ import annotations

import argparse
import os
import random
import sys

from .analysis import (
    EnergyWeights,
    LinkRule,
    SweepSpec,
    compare,
    run_sweep,
)
from .config import ACCELERATORS, RunConfig, load_config, parse_overrides
from .engn import evaluate_engn
from .hygcn import evaluate_hygcn
from .oracle import check_breakdown, random_case
from .serialize import (
    FORMATS,
    atomic_write,
    emit_breakdown,
    emit_comparison,
    emit_series,
    energy_report,
)
from .svgplot import PLOT_KINDS, emit_plot

DEFAULT_K_LINKS = ("P=10*K", "L=0.1*K")
DEFAULT_VALIDATE_SEED = 20231


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # single-line, machine-parseable
        raise CliError(f"{self.prog}: {message}")


def _add_common(parser: argparse.ArgumentParser, with_accel: bool) -> None:
    if with_accel:
        parser.add_argument("--accel", choices=ACCELERATORS, required=True,
                            help="accelerator model to evaluate")
    parser.add_argument("--config", help="config file (default: $GNNFLOW_CONFIG)")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one tile or hardware parameter")
    parser.add_argument("--format", choices=FORMATS, default="table")
    parser.add_argument("--output", help="write to this file instead of stdout")


def _load(args: argparse.Namespace, accelerator: str | None = None) -> RunConfig:
    path = args.config or os.environ.get("GNNFLOW_CONFIG") or None
    overrides = parse_overrides(args.set)
    return load_config(path=path, overrides=overrides, accelerator=accelerator)


def _write(args: argparse.Namespace, text: str) -> None:
    if args.output:
        atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


def _parse_number(text: str) -> int | float:
    try:
        return int(text)
    except ValueError:
        try:
            return float(text)
        except ValueError:
            raise CliError(f"not a number: {text!r}") from None


def _parse_range(text: str) -> list[int | float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise CliError(f"--range expects FROM:TO:STEP, got {text!r}")
    start, stop = _parse_number(parts[0]), _parse_number(parts[1])
    step_text = parts[2]
    values: list[int | float] = []
    if step_text.startswith(("x", "*")):
        factor = _parse_number(step_text[1:])
        if factor <= 1:
            raise CliError(f"--range factor must be > 1, got {step_text!r}")
        current = start
        while current <= stop:
            values.append(current)
            current = current * factor
    else:
        step = _parse_number(step_text)
        if step <= 0:
            raise CliError(f"--range step must be > 0, got {step_text!r}")
        current = start
        while current <= stop:
            values.append(current)
            current = current + step
    if not values:
        raise CliError(f"--range {text!r} produces no values")
    return values


def _cmd_evaluate(args: argparse.Namespace) -> int:
    run = _load(args, accelerator=args.accel)
    evaluate = evaluate_engn if run.accelerator == "engn" else evaluate_hygcn
    breakdown = evaluate(run.tile, run.hardware)
    _write(args, emit_breakdown(breakdown, args.format))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    run = _load(args, accelerator=args.accel)
    if args.values:
        values = [_parse_number(v) for v in args.values.split(",") if v.strip()]
    elif args.range:
        values = _parse_range(args.range)
    else:
        raise CliError("sweep: one of --values or --range is required")

    if args.link:
        link_texts = [text for text in args.link if text != "none"]
    elif args.param == "K":
        # Paper-style tile growth: edge count and high-degree share follow K.
        link_texts = list(DEFAULT_K_LINKS)
    else:
        link_texts = []
    links = tuple(LinkRule.parse(text) for text in link_texts)

    spec = SweepSpec(parameter=args.param, values=tuple(values), links=links)
    series = run_sweep(spec, run.tile, run.hardware)
    _write(args, emit_series(series, args.format))
    if args.plot:
        emit_plot(series, args.plot_kind, args.plot)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    run = _load(args)
    result = compare(run.tile, run.engn, run.hygcn)
    _write(args, emit_comparison(result, args.format))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    run = _load(args)
    lines = []
    failures = 0

    def record(name: str, discrepancies) -> None:
        nonlocal failures
        if discrepancies:
            failures += len(discrepancies)
            for item in discrepancies:
                lines.append(f"FAIL {name}: {item}")
        else:
            lines.append(f"OK {name}")

    record("engn default", check_breakdown(evaluate_engn(run.tile, run.engn)))
    record("hygcn default", check_breakdown(evaluate_hygcn(run.tile, run.hygcn)))

    rng = random.Random(args.seed)
    for index in range(args.random):
        for accel, evaluate in (("engn", evaluate_engn), ("hygcn", evaluate_hygcn)):
            tile, config = random_case(rng, accel)
            record(f"{accel} random[{index}]", check_breakdown(evaluate(tile, config)))

    lines.append(f"checked {len(lines)} breakdowns, {failures} discrepancies")
    _write(args, "\n".join(lines) + "\n")
    return 0 if failures == 0 else 1


def _cmd_energy(args: argparse.Namespace) -> int:
    run = _load(args, accelerator=args.accel)
    evaluate = evaluate_engn if run.accelerator == "engn" else evaluate_hygcn
    breakdown = evaluate(run.tile, run.hardware)
    weights = EnergyWeights(w_l1=args.w_l1, w_l2=args.w_l2, w_cache=args.w_cache)
    _write(args, energy_report(breakdown, weights, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gnnflow", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("evaluate", help="movement breakdown for one accelerator")
    _add_common(p_eval, with_accel=True)
    p_eval.set_defaults(func=_cmd_evaluate)

    p_sweep = sub.add_parser("sweep", help="evaluate across a parameter range")
    _add_common(p_sweep, with_accel=True)
    p_sweep.add_argument("--param", required=True, help="parameter to sweep")
    p_sweep.add_argument("--values", help="comma-separated values, e.g. 500,1000,2000")
    p_sweep.add_argument("--range", help="FROM:TO:STEP, or FROM:TO:x2 for geometric")
    p_sweep.add_argument("--link", action="append", default=[], metavar="NAME=EXPR",
                         help="derived parameter per point (default for K sweeps: "
                              "P=10*K and L=0.1*K; pass 'none' to disable)")
    p_sweep.add_argument("--plot", help="also write an SVG chart to this path")
    p_sweep.add_argument("--plot-kind", choices=PLOT_KINDS, default="stacked_bar")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_cmp = sub.add_parser("compare", help="engn vs hygcn on the same tile")
    _add_common(p_cmp, with_accel=False)
    p_cmp.set_defaults(func=_cmd_compare)

    p_val = sub.add_parser("validate", help="cross-check formulas with the step oracle")
    _add_common(p_val, with_accel=False)
    p_val.add_argument("--random", type=int, default=0, metavar="N",
                       help="additionally check N random cases per accelerator")
    p_val.add_argument("--seed", type=int, default=DEFAULT_VALIDATE_SEED)
    p_val.set_defaults(func=_cmd_validate)

    p_energy = sub.add_parser("energy", help="hierarchy-weighted movement cost")
    _add_common(p_energy, with_accel=True)
    p_energy.add_argument("--w-l1", type=float, default=1.0)
    p_energy.add_argument("--w-l2", type=float, default=6.0)
    p_energy.add_argument("--w-cache", type=float, default=6.0)
    p_energy.set_defaults(func=_cmd_energy)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
