"""Command-line interface: single runs, factor sweeps, heatmap plotting.

Subcommands: run (one optimization), sweep (a full grid writing
results.csv + manifest.json), plot (SVG heatmaps from a results CSV),
list-functions. The seed resolves as: --seed/--base-seed flag, then the
PPA_SEED environment variable, then the config/manifest value, then the
built-in default.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

from . import __version__, engine, report
from .benchmarks import SCALABLE_NAMES, list_functions, make_function
from .core import PpaConfig, SteepeningSchedule
from .experiment import (
    DEFAULT_BASE_SEED,
    CellResult,
    SweepSpec,
    default_sweep_a,
    default_sweep_b,
    run_sweep,
)

ENV_SEED = "PPA_SEED"


class CliError(Exception):
    """User-facing failure; main() prints it and exits nonzero."""


def _env_seed() -> int | None:
    raw = os.environ.get(ENV_SEED)
    if raw is None:
        return None
    try:
        return int(raw, 0)
    except ValueError:
        raise CliError(f"{ENV_SEED} must be an integer, got {raw!r}") from None


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _factor_label(factor: float) -> str:
    if factor == math.inf:
        return "vanilla"
    if factor == int(factor):
        return str(int(factor))
    return f"{factor:g}"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plantprop",
        description="Plant propagation optimizer with a steepening-fitness "
        "schedule, plus a factor-sweep experiment harness.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one optimization and print the result")
    p_run.add_argument("--function", required=True, help="benchmark function name")
    p_run.add_argument(
        "--dimension", type=int, default=2, help="dimensionality (default 2)"
    )
    sched = p_run.add_mutually_exclusive_group()
    sched.add_argument(
        "--factor",
        type=float,
        default=None,
        help="steepening factor (s = evals/factor + 1)",
    )
    sched.add_argument(
        "--vanilla",
        action="store_true",
        help="disable the schedule (s = 1 throughout, the default)",
    )
    p_run.add_argument("--budget", type=int, default=10_000)
    p_run.add_argument("--pop-size", type=int, default=30)
    p_run.add_argument("--n-max", type=int, default=5)
    p_run.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"run seed (default: ${ENV_SEED} or {DEFAULT_BASE_SEED})",
    )
    p_run.add_argument(
        "--trajectory",
        metavar="OUT.CSV",
        default=None,
        help="write (evaluation, best_so_far) pairs to this CSV",
    )
    p_run.add_argument(
        "--backend",
        choices=engine.BACKENDS,
        default="auto",
        help="engine backend (default auto)",
    )

    p_sweep = sub.add_parser(
        "sweep", help="run a (function x factor) grid, write CSV + manifest"
    )
    source = p_sweep.add_mutually_exclusive_group(required=True)
    source.add_argument(
        "--preset", choices=("sweep-a", "sweep-b"), help="a built-in grid"
    )
    source.add_argument("--config", metavar="SPEC.JSON", help="a sweep config file")
    source.add_argument(
        "--from-manifest",
        metavar="MANIFEST.JSON",
        help="re-run the sweep recorded in a manifest",
    )
    p_sweep.add_argument(
        "--out", required=True, metavar="DIR", help="output directory"
    )
    p_sweep.add_argument(
        "--jobs",
        type=int,
        default=None,
        help="worker processes (default: available parallelism)",
    )
    p_sweep.add_argument(
        "--base-seed",
        type=int,
        default=None,
        help=f"override the base seed (also ${ENV_SEED})",
    )
    p_sweep.add_argument(
        "--no-vanilla",
        action="store_true",
        help="drop the schedule-off baseline column (presets only)",
    )
    p_sweep.add_argument(
        "--backend", choices=engine.BACKENDS, default="auto"
    )
    p_sweep.add_argument(
        "--quiet", action="store_true", help="suppress per-cell progress lines"
    )

    p_plot = sub.add_parser("plot", help="render SVG heatmaps from a results CSV")
    p_plot.add_argument("csv", help="results.csv written by `sweep`")
    p_plot.add_argument(
        "--out", metavar="DIR", default=None,
        help="output directory (default: next to the CSV)",
    )
    p_plot.add_argument(
        "--combined", action="store_true",
        help="one grid with all functions instead of one file per function",
    )
    p_plot.add_argument(
        "--raw", action="store_true",
        help="linear scale on raw medians instead of log error vs optimum",
    )

    sub.add_parser("list-functions", help="list the built-in benchmark functions")

    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        function = make_function(args.function, args.dimension)
    except KeyError as exc:
        raise CliError(exc.args[0]) from None

    if args.factor is not None:
        schedule = SteepeningSchedule.linear(args.factor)
    else:
        schedule = SteepeningSchedule.vanilla()
    config = PpaConfig(
        budget=args.budget,
        pop_size=args.pop_size,
        n_max=args.n_max,
        schedule=schedule,
    )
    seed = args.seed
    if seed is None:
        seed = _env_seed()
    if seed is None:
        seed = DEFAULT_BASE_SEED

    result = engine.run(config, function, seed, backend=args.backend)

    if schedule.mode == "vanilla":
        label = "vanilla"
    else:
        label = f"linear, factor {_factor_label(schedule.factor)}"
    point = "(" + ", ".join(_fmt(v) for v in result.best_point) + ")"
    print(f"function     {function.name} (n={function.dimension})")
    print(f"schedule     {label}")
    print(f"seed         {seed}")
    print(f"best value   {_fmt(result.best_value)}")
    print(f"best point   {point}")
    print(f"evaluations  {result.evaluations_used}")

    if args.trajectory:
        lines = ["evaluation,best_value"]
        lines += [f"{i},{_fmt(v)}" for i, v in result.trajectory]
        Path(args.trajectory).write_text("\n".join(lines) + "\n", encoding="utf-8")
        print(f"trajectory   {args.trajectory}")
    return 0


def _resolve_sweep_spec(args: argparse.Namespace) -> SweepSpec:
    if args.preset is not None:
        include_vanilla = not args.no_vanilla
        if args.preset == "sweep-a":
            spec = default_sweep_a(include_vanilla=include_vanilla)
        else:
            spec = default_sweep_b(include_vanilla=include_vanilla)
    else:
        if args.no_vanilla:
            raise CliError("--no-vanilla only applies to --preset sweeps")
        if args.config is not None:
            path = Path(args.config)
            try:
                data = path.read_text(encoding="utf-8")
            except OSError as exc:
                raise CliError(f"cannot read {path}: {exc}") from None
            try:
                spec = SweepSpec.from_config_dict(json.loads(data))
            except (json.JSONDecodeError, ValueError) as exc:
                raise CliError(f"{path}: {exc}") from None
        else:
            try:
                spec = report.load_manifest(args.from_manifest)
            except (OSError, ValueError) as exc:
                raise CliError(str(exc)) from None

    seed = args.base_seed
    if seed is None:
        seed = _env_seed()
    if seed is not None:
        spec = replace(spec, base_seed=seed)
    return spec


def _cmd_sweep(args: argparse.Namespace) -> int:
    spec = _resolve_sweep_spec(args)
    jobs = args.jobs if args.jobs is not None else (os.cpu_count() or 1)
    if jobs < 1:
        raise CliError("--jobs must be >= 1")

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    total = spec.cell_count
    width = len(str(total))

    def progress(cell: CellResult, done: int, count: int, elapsed: float) -> None:
        if args.quiet:
            return
        print(
            f"[{done:>{width}}/{count}] {cell.function:<14} "
            f"factor {_factor_label(cell.factor):>7}  "
            f"median {cell.median:.6e}  ({elapsed:.1f}s)",
            flush=True,
        )

    started = time.perf_counter()
    try:
        results = run_sweep(spec, jobs=jobs, backend=args.backend, progress=progress)
    except (KeyError, ValueError, RuntimeError) as exc:
        raise CliError(
            exc.args[0] if isinstance(exc, KeyError) else str(exc)
        ) from None
    elapsed = time.perf_counter() - started

    backend = args.backend
    if backend == "auto":
        backend = "compiled" if engine.HAVE_KERNEL else "python"

    table = report.build_table(results)
    csv_path = report.write_csv(table, out_dir / "results.csv")
    manifest_path = report.write_manifest(
        spec, results, out_dir / "manifest.json", elapsed, backend
    )
    print(
        f"wrote {csv_path} ({len(results)} cells) and {manifest_path.name} "
        f"in {elapsed:.1f}s"
    )
    return 0


def _cmd_plot(args: argparse.Namespace) -> int:
    csv_path = Path(args.csv)
    try:
        table = report.parse_csv(csv_path)
    except OSError as exc:
        raise CliError(f"cannot read {csv_path}: {exc}") from None
    except ValueError as exc:
        raise CliError(str(exc)) from None

    out_dir = Path(args.out) if args.out is not None else csv_path.parent
    try:
        written = report.render_heatmaps(
            table, out_dir, combined=args.combined, raw=args.raw
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_list_functions(args: argparse.Namespace) -> int:
    print(f"{'name':<15} {'n':<5} {'domain':<22} optimum")
    for function in list_functions():
        low = function.bounds.lower
        high = function.bounds.upper
        scalable = function.name in SCALABLE_NAMES
        if all(a == low[0] for a in low) and all(b == high[0] for b in high):
            domain = f"[{low[0]:g}, {high[0]:g}]^{'n' if scalable else '2'}"
        else:
            domain = " x ".join(
                f"[{a:g}, {b:g}]" for a, b in zip(low, high)
            )
        arity = ">=2" if scalable else "2"
        print(
            f"{function.name:<15} {arity:<5} {domain:<22} "
            f"{function.known_optimum_value:g}"
        )
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "sweep": _cmd_sweep,
        "plot": _cmd_plot,
        "list-functions": _cmd_list_functions,
    }
    try:
        return handlers[args.command](args)
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
