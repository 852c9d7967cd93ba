"""Command-line surface: validate, solve, report, gen, bench.

Exit codes: 0 success, 1 usage error, 2 validation or parse error,
3 infeasible instance or failed seeding.  Diagnostics go to stderr; the
``EXAMSCHED_SEED`` environment variable overrides an instance's stored seed
and is itself overridden by ``--seed``.
"""

from __future__ import annotations

import argparse
import dataclasses
import logging
import os
import sys

from .engine import SeedingFailed
from .generate import generate_instance, load_generator_spec
from .instance_io import ParseError, load_instance, write_instance
from .model import SchedulingParams, UnificationError, ValidationError
from .report import render_report
from .rooms import InfeasibleRooms, ZeroCost
from .schedule import InconsistentSchedule, bench_populations, read_schedule, solve, write_schedule

log = logging.getLogger(__name__)

SEED_ENV_VAR = "EXAMSCHED_SEED"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="examsched",
        description="Two-stage exam scheduler: group courses into sessions, then seat them.",
    )
    parser.add_argument("--verbose", action="store_true", help="log per-generation progress")
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("validate", help="check an instance directory")
    cmd.add_argument("instance", help="instance directory")

    cmd = commands.add_parser("solve", help="compute a schedule for an instance")
    cmd.add_argument("instance", help="instance directory")
    cmd.add_argument("--seed", type=int, default=None, help="random seed override")
    cmd.add_argument("--population", type=int, default=None, help="population size")
    cmd.add_argument("--generations", type=int, default=None, help="generation budget")
    cmd.add_argument("--crossover-rate", type=float, default=None)
    cmd.add_argument("--mutation-rate", type=float, default=None)
    cmd.add_argument("--elite", type=int, default=None, help="elites per generation")
    cmd.add_argument("--max-session-minutes", type=int, default=None)
    cmd.add_argument("--out", default=None, help="write the schedule document here")

    cmd = commands.add_parser("report", help="render a schedule document as text")
    cmd.add_argument("schedule", help="schedule file written by solve --out")

    cmd = commands.add_parser("gen", help="generate a synthetic instance")
    cmd.add_argument("spec", help="generator spec (JSON)")
    cmd.add_argument("--seed", type=int, default=0, help="generator seed")
    cmd.add_argument("--out", required=True, help="instance directory to create")

    cmd = commands.add_parser("bench", help="compare population sizes on an instance")
    cmd.add_argument("instance", help="instance directory")
    cmd.add_argument(
        "--populations",
        default="4,10,20",
        help="comma-separated population sizes (default 4,10,20)",
    )
    cmd.add_argument("--seed", type=int, default=None, help="random seed override")
    return parser


def _solve_params(args: argparse.Namespace, stored: SchedulingParams) -> SchedulingParams:
    overrides: dict[str, object] = {}
    env_seed = os.environ.get(SEED_ENV_VAR)
    if env_seed is not None:
        try:
            overrides["seed"] = int(env_seed)
        except ValueError:
            raise ValueError(f"{SEED_ENV_VAR} must be an integer, got {env_seed!r}") from None
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    for attr, field in (
        ("population", "population_size"),
        ("generations", "max_generations"),
        ("crossover_rate", "crossover_rate"),
        ("mutation_rate", "mutation_rate"),
        ("elite", "elite_count"),
        ("max_session_minutes", "max_session_minutes"),
    ):
        value = getattr(args, attr, None)
        if value is not None:
            overrides[field] = value
    params = dataclasses.replace(stored, **overrides) if overrides else stored
    params.validate()
    return params


def _cmd_validate(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    print(
        f"{args.instance}: valid instance with {len(instance.departments)} departments, "
        f"{len(instance.courses)} courses, {len(instance.students)} students, "
        f"{len(instance.enrollments)} enrollments, {len(instance.classrooms)} classrooms"
    )
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = load_instance(args.instance)
    params = _solve_params(args, instance.params)
    schedule = solve(instance, params)
    if args.out:
        write_schedule(schedule, args.out)
        print(
            f"schedule written to {args.out} "
            f"(overlap score {schedule.stage1_score}, seating cost {schedule.total_cost})"
        )
    else:
        print(render_report(schedule), end="")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    print(render_report(read_schedule(args.schedule)), end="")
    return 0


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = load_generator_spec(args.spec)
    instance = generate_instance(spec, args.seed)
    write_instance(instance, args.out)
    print(
        f"generated {args.out}: {len(instance.departments)} departments, "
        f"{len(instance.courses)} courses, {len(instance.students)} students, "
        f"{len(instance.classrooms)} classrooms (seed {args.seed})"
    )
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        populations = [int(p) for p in args.populations.split(",") if p.strip()]
    except ValueError:
        raise ValueError(f"--populations must be comma-separated integers, got {args.populations!r}") from None
    if not populations or any(p < 1 for p in populations):
        raise ValueError("--populations needs at least one positive integer")
    instance = load_instance(args.instance)
    params = _solve_params(args, instance.params)
    rows = bench_populations(instance, populations, params)
    print(f"{'population':>10}  {'best':>6}  {'generations':>11}  {'to-best':>7}  {'seconds':>8}")
    for row in rows:
        print(
            f"{row.population_size:>10}  {row.best_raw_score:>6}  "
            f"{row.generations_run:>11}  {row.generations_to_best:>7}  {row.seconds:>8.2f}"
        )
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "solve": _cmd_solve,
    "report": _cmd_report,
    "gen": _cmd_gen,
    "bench": _cmd_bench,
}


def cli_run(argv: list[str] | None = None) -> int:
    """Run one CLI invocation and return its exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return 0 if exc.code == 0 else 1
    if args.verbose:
        logging.basicConfig(stream=sys.stderr, format="%(message)s")
        logging.getLogger("examsched").setLevel(logging.DEBUG)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, ValidationError, UnificationError, InconsistentSchedule) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InfeasibleRooms, SeedingFailed, ZeroCost) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_run(sys.argv[1:]))


if __name__ == "__main__":
    main()
