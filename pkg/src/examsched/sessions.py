"""Stage one: partition unified courses into exam sessions.

A chromosome is an ordered list of sessions, each an ordered list of unified
course ids.  Feasibility means every course appears exactly once and no
session exceeds the duration cap.  The GA maximizes the summed overlap score
(common enrollees minus differing enrollees, per session): grouping courses
with shared audiences lets those students finish in one sitting.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .engine import GaProblem, GaRunResult, RepairFailed, SeedingFailed, run_ga
from .model import (
    COMMON_DEPARTMENT,
    EnrollmentIndex,
    ExamInstance,
    SchedulingParams,
    UnifiedCourse,
    required_session_count,
    session_stats,
    unify_common_courses,
)


@dataclass(frozen=True)
class SessionChromosome:
    """Ordered sessions of unified course ids."""

    sessions: tuple[tuple[str, ...], ...]

    def flat(self) -> tuple[str, ...]:
        return tuple(g for session in self.sessions for g in session)


def chromosome_violations(
    chrom: SessionChromosome, courses: Sequence[UnifiedCourse], max_session_minutes: int
) -> list[str]:
    """Hard-constraint violations: exactly-once coverage and duration caps."""
    minutes = {c.unified_id: c.exam_minutes for c in courses}
    problems = []
    seen: dict[str, int] = {}
    for g in chrom.flat():
        seen[g] = seen.get(g, 0) + 1
    for cid in minutes:
        n = seen.pop(cid, 0)
        if n == 0:
            problems.append(f"course {cid} is not scheduled")
        elif n > 1:
            problems.append(f"course {cid} is scheduled {n} times")
    for cid in seen:
        problems.append(f"unknown course {cid} in chromosome")
    for i, session in enumerate(chrom.sessions):
        load = sum(minutes.get(g, 0) for g in session)
        if load > max_session_minutes:
            problems.append(f"session {i} runs {load} minutes, cap is {max_session_minutes}")
    return problems


def _pack_randomly(
    courses: Sequence[UnifiedCourse],
    session_count: int,
    cap: int,
    rng: random.Random,
) -> tuple[tuple[str, ...], ...] | None:
    """One randomized packing pass; None when a course gets stranded.

    Each session grows course by course.  After a department course is placed,
    later picks prefer that department's remaining courses or shared courses;
    shared courses do not move the department anchor.  The pool widens to all
    fitting courses whenever the preference is empty, and a session closes
    once nothing fits its remaining minutes.
    """
    remaining = list(courses)
    sessions: list[tuple[str, ...]] = []
    for _ in range(session_count):
        current: list[str] = []
        used = 0
        anchor: str | None = None
        while True:
            fitting = [c for c in remaining if c.exam_minutes <= cap - used]
            if not fitting:
                break
            if anchor is None:
                pool = fitting
            else:
                pool = [
                    c
                    for c in fitting
                    if c.department_code == anchor or c.department_code == COMMON_DEPARTMENT
                ] or fitting
            pick = pool[rng.randrange(len(pool))]
            remaining.remove(pick)
            current.append(pick.unified_id)
            used += pick.exam_minutes
            if pick.department_code != COMMON_DEPARTMENT:
                anchor = pick.department_code
        sessions.append(tuple(current))
    if remaining:
        return None
    return tuple(sessions)


def _pack_first_fit_decreasing(
    courses: Sequence[UnifiedCourse], session_count: int, cap: int
) -> tuple[tuple[str, ...], ...] | None:
    order = sorted(range(len(courses)), key=lambda i: (-courses[i].exam_minutes, i))
    sessions: list[list[str]] = [[] for _ in range(session_count)]
    loads = [0] * session_count
    for i in order:
        course = courses[i]
        for s in range(session_count):
            if loads[s] + course.exam_minutes <= cap:
                sessions[s].append(course.unified_id)
                loads[s] += course.exam_minutes
                break
        else:
            return None
    return tuple(tuple(s) for s in sessions)


def seed_course_chromosome(
    courses: Sequence[UnifiedCourse],
    session_count: int,
    params: SchedulingParams,
    rng: random.Random,
) -> SessionChromosome:
    """Department-affinity randomized seeding with a first-fit fallback."""
    cap = params.max_session_minutes
    for _ in range(params.seeding_retries):
        packed = _pack_randomly(courses, session_count, cap, rng)
        if packed is not None:
            return SessionChromosome(packed)
    packed = _pack_first_fit_decreasing(courses, session_count, cap)
    if packed is None:
        raise SeedingFailed(
            f"could not pack {len(courses)} courses into {session_count} sessions of {cap} minutes"
        )
    return SessionChromosome(packed)


def stage1_raw_score(chrom: SessionChromosome, index: EnrollmentIndex) -> int:
    """Sum of (common enrollees - differing enrollees) over non-empty sessions."""
    total = 0
    for session in chrom.sessions:
        if not session:
            continue
        stats = session_stats(session, index)
        total += stats.common_students - stats.different_students
    return total


def stage1_fitness(raw_scores: Sequence[int]) -> list[int]:
    """Shift raw scores so the population minimum maps to zero."""
    floor = min(raw_scores)
    return [r - floor for r in raw_scores]


def stage1_selection_weights(fitness: Sequence[int]) -> list[int]:
    """Integer percentage shares of total fitness, rounded half-up."""
    total = sum(fitness)
    if total <= 0:
        raise ValueError("total fitness must be positive")
    return [(200 * f + total) // (2 * total) for f in fitness]


def swap_session_span(
    a: SessionChromosome, b: SessionChromosome, lo: int, hi: int
) -> tuple[SessionChromosome, SessionChromosome]:
    """Exchange whole sessions in [lo, hi) between two parents."""
    sa, sb = list(a.sessions), list(b.sessions)
    sa[lo:hi], sb[lo:hi] = sb[lo:hi], sa[lo:hi]
    return SessionChromosome(tuple(sa)), SessionChromosome(tuple(sb))


def crossover_sessions(
    a: SessionChromosome, b: SessionChromosome, rng: random.Random
) -> tuple[SessionChromosome, SessionChromosome]:
    """Two-point crossover cutting only on session boundaries.

    Children usually duplicate some courses and miss others; the repair
    operator restores feasibility afterwards.
    """
    if len(a.sessions) != len(b.sessions):
        raise ValueError("parents must have the same session count")
    lo, hi = sorted(rng.sample(range(len(a.sessions) + 1), 2))
    return swap_session_span(a, b, lo, hi)


def swap_flat_positions(chrom: SessionChromosome, i: int, j: int) -> SessionChromosome:
    """Swap the courses at two flat gene positions, keeping session shapes."""
    flat = list(chrom.flat())
    flat[i], flat[j] = flat[j], flat[i]
    rebuilt = []
    cursor = 0
    for session in chrom.sessions:
        rebuilt.append(tuple(flat[cursor : cursor + len(session)]))
        cursor += len(session)
    return SessionChromosome(tuple(rebuilt))


def mutate_course_swap(chrom: SessionChromosome, rng: random.Random) -> SessionChromosome:
    """Swap two distinct random gene positions (identity below two genes)."""
    n = len(chrom.flat())
    if n < 2:
        return chrom
    i, j = rng.sample(range(n), 2)
    return swap_flat_positions(chrom, i, j)


def repair_course_chromosome(
    chrom: SessionChromosome,
    all_courses: Sequence[UnifiedCourse],
    max_session_minutes: int,
    rng: random.Random,
) -> SessionChromosome:
    """Restore exactly-once coverage, then rebalance overlong sessions.

    Duplicate occurrences beyond a randomly kept one are overwritten with
    randomly drawn missing courses; surplus occurrences are dropped and
    leftover missing courses join the roomiest session.  Rebalancing then
    moves random courses out of overlong sessions into the session with the
    most slack that accepts them, giving up (RepairFailed) after a budget of
    len(all_courses) squared moves.  A feasible input is returned unchanged.
    """
    minutes = {c.unified_id: c.exam_minutes for c in all_courses}
    order = [c.unified_id for c in all_courses]
    sessions = [list(s) for s in chrom.sessions]

    def load(s: list[str]) -> int:
        return sum(minutes[g] for g in s)

    counts: dict[str, int] = {}
    for s in sessions:
        for g in s:
            counts[g] = counts.get(g, 0) + 1
    missing = [cid for cid in order if cid not in counts]
    duplicated = [cid for cid in order if counts.get(cid, 0) > 1]

    if not missing and not duplicated and all(load(s) <= max_session_minutes for s in sessions):
        return chrom

    for cid in duplicated:
        positions = [(si, pi) for si, s in enumerate(sessions) for pi, g in enumerate(s) if g == cid]
        positions.pop(rng.randrange(len(positions)))
        for si, pi in positions:
            if missing:
                sessions[si][pi] = missing.pop(rng.randrange(len(missing)))
            else:
                sessions[si][pi] = ""  # surplus occurrence, dropped below
    sessions = [[g for g in s if g] for s in sessions]

    for cid in missing:  # underfull child: place leftovers by best slack
        slots = sorted(
            range(len(sessions)), key=lambda s: (-(max_session_minutes - load(sessions[s])), s)
        )
        target = next(
            (s for s in slots if load(sessions[s]) + minutes[cid] <= max_session_minutes),
            slots[0],
        )
        sessions[target].append(cid)

    budget = len(all_courses) ** 2
    moves = 0
    while True:
        over = next((s for s in range(len(sessions)) if load(sessions[s]) > max_session_minutes), None)
        if over is None:
            break
        if moves >= budget:
            raise RepairFailed(f"session {over} still overlong after {moves} moves")
        moves += 1
        gene = sessions[over][rng.randrange(len(sessions[over]))]
        dest = None
        best_slack = -1
        for s in range(len(sessions)):
            if s == over:
                continue
            slack = max_session_minutes - load(sessions[s])
            if slack >= minutes[gene] and slack > best_slack:
                dest, best_slack = s, slack
        if dest is None:
            continue  # redraw another course next round, still on the budget
        sessions[over].remove(gene)
        sessions[dest].append(gene)

    return SessionChromosome(tuple(tuple(s) for s in sessions))


class SessionProblem(GaProblem):
    """Stage-one GA wiring over a fixed unified course list."""

    def __init__(
        self,
        courses: Sequence[UnifiedCourse],
        index: EnrollmentIndex,
        session_count: int,
        params: SchedulingParams,
    ):
        self.courses = tuple(courses)
        self.index = index
        self.session_count = session_count
        self.params = params

    def seed_individual(self, rng: random.Random) -> SessionChromosome:
        return seed_course_chromosome(self.courses, self.session_count, self.params, rng)

    def raw_score(self, individual: SessionChromosome) -> int:
        return stage1_raw_score(individual, self.index)

    def fitness(self, raw_scores: Sequence[int]) -> list[int]:
        return stage1_fitness(raw_scores)

    def selection_weights(self, fitness: Sequence[int]) -> list[int]:
        return stage1_selection_weights(fitness)

    def crossover(self, a, b, rng: random.Random):
        return crossover_sessions(a, b, rng)

    def mutate(self, individual, rng: random.Random):
        return mutate_course_swap(individual, rng)

    def repair(self, individual, rng: random.Random):
        return repair_course_chromosome(
            individual, self.courses, self.params.max_session_minutes, rng
        )

    def is_feasible(self, individual) -> bool:
        return not chromosome_violations(individual, self.courses, self.params.max_session_minutes)


def evolve_sessions(instance: ExamInstance, params: SchedulingParams | None = None) -> GaRunResult:
    """Unify courses and evolve a session partition for the instance."""
    params = instance.params if params is None else params
    params.validate()
    courses = unify_common_courses(instance)
    index = EnrollmentIndex(courses)
    count = required_session_count(courses, params.max_session_minutes)
    return run_ga(SessionProblem(courses, index, count, params), params)
