"""Command line entry point.

    cvqe run --config run.json [overrides]
    cvqe cost --qubits 14 --iterations 100 --shots 1000

Exit codes: 0 success, 2 configuration error, 3 fixture error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys

from .fermion import FcidumpError
from .pipeline import ConfigError, RunConfig, measurement_cost, run_experiment

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_FIXTURE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvqe")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a sweep described by a config file")
    run.add_argument("--config", required=True, help="JSON file mirroring RunConfig")
    run.add_argument("--fcidump", help="run a single fixture instead of the configured list")
    run.add_argument("--shots", type=int)
    run.add_argument("--seed", type=int, help="replace the seed list with one seed")
    run.add_argument("--time", type=float, help="replace the time list with one value")
    run.add_argument("--cutoff", type=float, help="replace the cutoff list with one value")
    run.add_argument("--steps", type=int)
    run.add_argument("--sweep", choices=("bond", "time", "cutoff"))
    run.add_argument("--sector-filter", action="store_true")
    run.add_argument("--out", help="output directory")

    cost = sub.add_parser("cost", help="report circuit-execution counts")
    cost.add_argument("--qubits", type=int, required=True)
    cost.add_argument("--iterations", type=int, default=100)
    cost.add_argument("--bases", type=int, default=None)
    cost.add_argument("--shots", type=int, required=True)
    return parser


def _apply_overrides(cfg: RunConfig, args: argparse.Namespace) -> RunConfig:
    updates = {}
    if args.fcidump:
        updates["fixtures"] = [args.fcidump]
    if args.shots is not None:
        updates["shots"] = args.shots
    if args.seed is not None:
        updates["seeds"] = [args.seed]
    if args.time is not None:
        updates["times"] = [args.time]
    if args.cutoff is not None:
        updates["cutoffs"] = [args.cutoff]
    if args.steps is not None:
        updates["steps"] = args.steps
    if args.sweep is not None:
        updates["sweep"] = args.sweep
    if args.sector_filter:
        updates["sector_filter"] = True
    if args.out is not None:
        updates["out_dir"] = args.out
    return dataclasses.replace(cfg, **updates) if updates else cfg


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "cost":
        try:
            report = measurement_cost(args.qubits, args.iterations, args.bases, args.shots)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        print(f"sampling executions per structure: {report.cvqe}")
        print(f"iterative reference executions:    {report.vqe}")
        return EXIT_OK

    try:
        cfg = _apply_overrides(RunConfig.from_json(args.config), args)
    except (ConfigError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        records = run_experiment(cfg)
    except (FileNotFoundError, FcidumpError) as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    except ValueError as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE
    print(f"{len(records)} cells -> {cfg.out_dir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
