"""End-to-end solving and schedule serialization.

``solve`` runs the full pipeline: validate, unify, evolve a session
partition, then evolve classroom assignments for the resulting headcounts.
The outcome is a ``Schedule``: per-session courses, overlap statistics,
rooms and cost rows, plus the global objective values and the parameters
that produced them.  Schedules serialize to a canonical JSON document that
reads back as an equal object; reading re-checks internal consistency so a
hand-edited file cannot smuggle in contradictory numbers.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

from .model import (
    ExamInstance,
    SchedulingParams,
    SessionStats,
    EnrollmentIndex,
    ValidationError,
    required_session_count,
    unify_common_courses,
    validate_instance,
)
from .rooms import (
    RoomCost,
    SessionRoomCost,
    evolve_rooms,
    session_headcounts,
    stage2_cost,
)
from .sessions import evolve_sessions

FORMAT_VERSION = 1


class InconsistentSchedule(ValueError):
    """A schedule document contradicts itself or uses an unknown format."""


@dataclass(frozen=True)
class SessionPlan:
    """One session: its courses, audience statistics, rooms and cost row."""

    courses: tuple[str, ...]
    course_codes: tuple[str, ...]
    stats: SessionStats
    headcount: int
    rooms: tuple[str, ...]
    cost: SessionRoomCost


@dataclass(frozen=True)
class Schedule:
    sessions: tuple[SessionPlan, ...]
    stage1_score: int
    total_cost: int
    params: SchedulingParams


@dataclass(frozen=True)
class BenchRow:
    """One benchmark run: how fast a population size reaches its best."""

    population_size: int
    best_raw_score: int
    generations_run: int
    generations_to_best: int
    seconds: float


def _stage2_params(params: SchedulingParams) -> SchedulingParams:
    # Separate stream for stage 2 so both stages get documented, independent
    # draw orders from one user-facing seed.
    return dataclasses.replace(params, seed=(params.seed + 1) % 2**64)


def solve(instance: ExamInstance, params: SchedulingParams | None = None) -> Schedule:
    """Validate, partition into sessions, seat every session; see module doc."""
    params = instance.params if params is None else params
    report = validate_instance(
        instance if params is instance.params else dataclasses.replace(instance, params=params)
    )
    if not report.ok:
        raise ValidationError(report)

    courses = unify_common_courses(instance)
    index = EnrollmentIndex(courses)
    stage1 = evolve_sessions(instance, params)
    best_sessions = stage1.best_individual

    heads = session_headcounts(best_sessions, index)
    stage2 = evolve_rooms(instance.classrooms, heads, _stage2_params(params))
    best_rooms = stage2.best_individual
    cost = stage2_cost(best_rooms, instance.classrooms, heads)

    code_of = {c.unified_id: c.course_code for c in courses}
    plans = []
    for i, session in enumerate(best_sessions.sessions):
        plans.append(
            SessionPlan(
                courses=tuple(session),
                course_codes=tuple(code_of[g] for g in session),
                stats=index.stats(session),
                headcount=heads[i].students,
                rooms=best_rooms.rooms_by_session[i],
                cost=cost.sessions[i],
            )
        )
    return Schedule(
        sessions=tuple(plans),
        stage1_score=stage1.best_raw_score,
        total_cost=cost.total,
        params=params,
    )


def _schedule_payload(schedule: Schedule) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "stage1_score": schedule.stage1_score,
        "total_cost": schedule.total_cost,
        "params": dataclasses.asdict(schedule.params),
        "sessions": [
            {
                "courses": list(p.courses),
                "course_codes": list(p.course_codes),
                "common_students": p.stats.common_students,
                "different_students": p.stats.different_students,
                "distinct_enrollees": p.stats.distinct_enrollees,
                "total_exam_minutes": p.stats.total_exam_minutes,
                "headcount": p.headcount,
                "rooms": list(p.rooms),
                "vacancies": p.cost.vacancies,
                "supervisors": p.cost.supervisors,
                "buildings": p.cost.buildings,
            }
            for p in schedule.sessions
        ],
    }


def write_schedule(schedule: Schedule, path: str | Path) -> None:
    """Serialize to canonical JSON, atomically: same schedule, same bytes."""
    target = Path(path)
    text = json.dumps(_schedule_payload(schedule), indent=2, sort_keys=True) + "\n"
    fd, tmp = tempfile.mkstemp(dir=target.parent, prefix=target.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _require(mapping: dict, key: str, kind: type, where: str):
    if key not in mapping:
        raise InconsistentSchedule(f"{where}: missing field {key!r}")
    value = mapping[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise InconsistentSchedule(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def read_schedule(path: str | Path) -> Schedule:
    """Load a schedule document, verifying version and internal consistency."""
    target = Path(path)
    try:
        payload = json.loads(target.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InconsistentSchedule(f"{target}: not a schedule document ({exc})") from None
    if not isinstance(payload, dict):
        raise InconsistentSchedule(f"{target}: not a schedule document")
    version = _require(payload, "format_version", int, str(target))
    if version != FORMAT_VERSION:
        raise InconsistentSchedule(f"{target}: unsupported format_version {version}")

    raw_params = _require(payload, "params", dict, str(target))
    try:
        params = SchedulingParams(**raw_params)
    except TypeError as exc:
        raise InconsistentSchedule(f"{target}: bad params block ({exc})") from None

    plans = []
    raw_sessions = _require(payload, "sessions", list, str(target))
    for i, entry in enumerate(raw_sessions):
        where = f"{target}: session {i}"
        if not isinstance(entry, dict):
            raise InconsistentSchedule(f"{where} is not an object")
        courses = _require(entry, "courses", list, where)
        codes = _require(entry, "course_codes", list, where)
        if len(courses) != len(codes):
            raise InconsistentSchedule(f"{where}: courses and course_codes differ in length")
        stats = SessionStats(
            common_students=_require(entry, "common_students", int, where),
            different_students=_require(entry, "different_students", int, where),
            distinct_enrollees=_require(entry, "distinct_enrollees", int, where),
            total_exam_minutes=_require(entry, "total_exam_minutes", int, where),
        )
        if stats.common_students + stats.different_students != stats.distinct_enrollees:
            raise InconsistentSchedule(
                f"{where}: common {stats.common_students} + different "
                f"{stats.different_students} != distinct {stats.distinct_enrollees}"
            )
        headcount = _require(entry, "headcount", int, where)
        if headcount != stats.distinct_enrollees:
            raise InconsistentSchedule(
                f"{where}: headcount {headcount} != distinct enrollees "
                f"{stats.distinct_enrollees}"
            )
        plans.append(
            SessionPlan(
                courses=tuple(str(c) for c in courses),
                course_codes=tuple(str(c) for c in codes),
                stats=stats,
                headcount=headcount,
                rooms=tuple(str(r) for r in _require(entry, "rooms", list, where)),
                cost=SessionRoomCost(
                    vacancies=_require(entry, "vacancies", int, where),
                    supervisors=_require(entry, "supervisors", int, where),
                    buildings=_require(entry, "buildings", int, where),
                ),
            )
        )

    stage1_score = _require(payload, "stage1_score", int, str(target))
    declared = sum(p.stats.common_students - p.stats.different_students for p in plans)
    if stage1_score != declared:
        raise InconsistentSchedule(
            f"{target}: stage1_score {stage1_score} != recomputed {declared}"
        )
    total_cost = _require(payload, "total_cost", int, str(target))
    recomputed = RoomCost(tuple(p.cost for p in plans)).total
    if total_cost != recomputed:
        raise InconsistentSchedule(
            f"{target}: total_cost {total_cost} != recomputed {recomputed}"
        )
    return Schedule(tuple(plans), stage1_score, total_cost, params)


def bench_populations(
    instance: ExamInstance,
    populations: list[int],
    params: SchedulingParams | None = None,
) -> list[BenchRow]:
    """Run stage 1 once per population size and report convergence speed.

    ``generations_to_best`` is the first generation whose recorded best
    equals the final best (0 when the run ended on its initial population).
    Wall-clock seconds are informational only: they vary across machines,
    while generation counts do not.
    """
    base = instance.params if params is None else params
    rows = []
    for size in populations:
        run_params = dataclasses.replace(
            base,
            population_size=size,
            elite_count=min(base.elite_count, size - 1),
        )
        started = time.perf_counter()
        result = evolve_sessions(instance, run_params)
        elapsed = time.perf_counter() - started
        to_best = 0
        for generation, best in enumerate(result.history, start=1):
            if best == result.best_raw_score:
                to_best = generation
                break
        rows.append(
            BenchRow(
                population_size=size,
                best_raw_score=result.best_raw_score,
                generations_run=result.generations_run,
                generations_to_best=to_best,
                seconds=elapsed,
            )
        )
    return rows
