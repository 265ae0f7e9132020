#!/usr/bin/env python3
"""Command-line front end: solve, bench and oracle."""

import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from lkbandit.config import config
from lkbandit.errors import TSPLIBParseError, UsageError
from lkbandit.solver import BatchSummary, Params, parse_mode, preprocess, run_batch
from lkbandit.tsplib import load_instance, load_registry, write_tour
from .oracle import brute_force_optimum
from .report import cumulative_gap_frame, format_table, summary_frame, write_json, write_trace

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE_ERROR = 2


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-trials", type=int, help="Trials per run (default: number of cities)")
    parser.add_argument("--runs", type=int, help="Independent runs per instance")
    parser.add_argument("--seed", type=int, help="Seed of the first run; run r uses seed + r")
    parser.add_argument("--bs", type=int, help="Warm-up trials that only collect backbone information")
    parser.add_argument("--arms", type=int, help="Number of bandit arms")
    parser.add_argument("--step-size", type=float, help="Step size of the arm value update")
    parser.add_argument("--ucb-c", type=float, help="Exploration bias of the UCB rule")
    parser.add_argument("--gamma", type=float, help="Per-trial weight discount")
    parser.add_argument("--candidates", type=int, help="Candidate set size")
    parser.add_argument("--kmax", type=int, help="Deepest sequential move")
    parser.add_argument("--jobs", type=int, help="Parallel worker processes")
    parser.add_argument("--json", dest="json_path", help="Write machine-readable results here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lkbandit", description="Bandit-guided k-opt TSP solver")
    parser.add_argument("--log-level", default=None, help="Logging level (default from config)")
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="Solve one TSPLIB instance")
    solve.add_argument("--instance", required=True, help="TSPLIB .tsp file")
    solve.add_argument("--mode", help="mabb, lkh or fixed-w=X")
    solve.add_argument("--optimum", type=int, help="Known optimum; enables success counting and early exit")
    solve.add_argument("--trace", help="Write the per-trial bandit trace CSV here")
    solve.add_argument("--dump-backbone", help="Write final backbone edge counts here")
    solve.add_argument("--output-tour", help="Write the best tour in TSPLIB TOUR format here")
    _add_run_options(solve)
    solve.set_defaults(handler=cmd_solve)

    bench = sub.add_parser("bench", help="Run every instance of a registry")
    bench.add_argument("--registry", required=True, help="File of 'instance optimum [max_trials]' lines")
    bench.add_argument("--modes", default=None, help="Comma-separated modes to compare")
    _add_run_options(bench)
    bench.set_defaults(handler=cmd_bench)

    oracle = sub.add_parser("oracle", help="Exact optimum by exhaustive search (n <= 12)")
    oracle.add_argument("--instance", required=True, help="TSPLIB .tsp file")
    oracle.set_defaults(handler=cmd_oracle)
    return parser


def _params(args, **extra) -> Params:
    return Params.from_config(
        config,
        max_trials=args.max_trials,
        bs=args.bs,
        m=args.arms,
        s=args.step_size,
        c=args.ucb_c,
        gamma=args.gamma,
        candidate_size=args.candidates,
        k_max=args.kmax,
        seed=args.seed,
        **extra,
    )


def _runs_and_jobs(args):
    runs = args.runs if args.runs is not None else config.get("runs")
    jobs = args.jobs if args.jobs is not None else config.get("jobs")
    if runs < 1:
        raise UsageError(f"--runs must be positive, got {runs}")
    return runs, jobs


def cmd_solve(args) -> int:
    params = _params(args, mode=args.mode)
    runs, jobs = _runs_and_jobs(args)
    inst = load_instance(args.instance, optimum=args.optimum)

    summary = run_batch(inst, params, runs, jobs=jobs, backbone_path=args.dump_backbone)
    print(format_table(summary_frame([summary]), index=False))

    if args.trace:
        write_trace(args.trace, summary.results, params.m)
    if args.output_tour:
        best = min(summary.results, key=lambda r: r.best_length)
        write_tour(args.output_tour, inst, best.best_tour, best.best_length)
    if args.json_path:
        write_json(args.json_path, summary.to_dict())
    return EXIT_OK


def cmd_bench(args) -> int:
    entries = load_registry(args.registry)
    if not entries:
        raise UsageError(f"Registry {args.registry} lists no instances")
    mode_texts = args.modes.split(",") if args.modes else [config.get("mode")]
    modes = [parse_mode(text) for text in mode_texts]
    runs, jobs = _runs_and_jobs(args)
    base = _params(args)

    summaries: List[BatchSummary] = []
    for entry in entries:
        if entry.path is None:
            raise FileNotFoundError(f"No TSPLIB file found for registry entry {entry.name}")
        inst = load_instance(entry.path, optimum=entry.optimum)
        pre = preprocess(inst, base.candidate_size)
        for mode in modes:
            params = replace(base, mode=mode, max_trials=entry.max_trials or base.max_trials)
            summaries.append(run_batch(inst, params, runs, jobs=jobs, pre=pre))

    print(format_table(summary_frame(summaries), index=False))
    print()
    print("Cumulative gap")
    gaps = cumulative_gap_frame(summaries)
    print(format_table(gaps))

    if args.json_path:
        write_json(args.json_path, {
            "summaries": [s.to_dict() for s in summaries],
            "cumulative_gap": {mode: float(gaps[mode].iloc[-1]) for mode in gaps.columns},
        })
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = load_instance(args.instance)
    length, order = brute_force_optimum(inst)
    print(f"{inst.name}: optimum {length}")
    print(" ".join(str(city + 1) for city in order))
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    level = (args.log_level or config.get("log_level") or "INFO").upper()
    logging.basicConfig(level=getattr(logging, level, logging.INFO), format=LOG_FORMAT)

    try:
        return args.handler(args)
    except UsageError as e:
        logger.error(f"{e}")
        return EXIT_USAGE_ERROR
    except (TSPLIBParseError, OSError) as e:
        logger.error(f"{e}")
        return EXIT_DATA_ERROR


if __name__ == '__main__':
    sys.exit(main())
