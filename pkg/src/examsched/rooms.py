"""Stage two: assign classrooms to each exam session.

A chromosome holds, per session, the ordered classroom ids seating that
session's students.  The GA minimizes ``F = vacancies + supervisors +
10 * distinct buildings`` summed over sessions; since the engine maximizes,
raw score is ``-F``, and fitness is reported as the exact fraction ``1/F``.

A classroom may serve several sessions (they run at different times) but may
appear at most once within one session.  Sessions seating nobody use no rooms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .engine import GaProblem, GaRunResult, run_ga
from .model import Classroom, EnrollmentIndex, SchedulingParams
from .sessions import SessionChromosome


class InfeasibleRooms(RuntimeError):
    """A session's students cannot be seated with the rooms at hand."""


class ZeroCost(ValueError):
    """A cost of zero has no reciprocal fitness (nothing to seat)."""


@dataclass(frozen=True)
class SessionHeadcount:
    """Students to seat in one session: its distinct enrollees."""

    session_index: int
    students: int


@dataclass(frozen=True)
class RoomChromosome:
    """Classroom ids per session; a room may serve several sessions."""

    rooms_by_session: tuple[tuple[str, ...], ...]


@dataclass(frozen=True)
class SessionRoomCost:
    vacancies: int
    supervisors: int
    buildings: int

    @property
    def penalty(self) -> int:
        return self.vacancies + self.supervisors + 10 * self.buildings


@dataclass(frozen=True)
class RoomCost:
    """Per-session cost rows plus the overall objective ``total``."""

    sessions: tuple[SessionRoomCost, ...]

    @property
    def vacancies(self) -> int:
        return sum(s.vacancies for s in self.sessions)

    @property
    def supervisors(self) -> int:
        return sum(s.supervisors for s in self.sessions)

    @property
    def buildings(self) -> int:
        return sum(s.buildings for s in self.sessions)

    @property
    def total(self) -> int:
        return sum(s.penalty for s in self.sessions)


def session_headcounts(
    best_sessions: SessionChromosome, index: EnrollmentIndex
) -> tuple[SessionHeadcount, ...]:
    """Distinct enrollees per session of a stage-one chromosome."""
    return tuple(
        SessionHeadcount(i, index.stats(session).distinct_enrollees)
        for i, session in enumerate(best_sessions.sessions)
    )


def _counts(headcounts: Sequence[SessionHeadcount] | Sequence[int]) -> tuple[int, ...]:
    # Plain ints are accepted everywhere a headcount list is expected.
    return tuple(h.students if isinstance(h, SessionHeadcount) else int(h) for h in headcounts)


def room_violations(
    chrom: RoomChromosome,
    classrooms: Sequence[Classroom],
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
) -> list[str]:
    """Hard-constraint violations: known ids, in-session uniqueness, coverage."""
    need = _counts(headcounts)
    quota = {r.id: r.quota for r in classrooms}
    problems = []
    if len(chrom.rooms_by_session) != len(need):
        problems.append(
            f"chromosome has {len(chrom.rooms_by_session)} sessions, expected {len(need)}"
        )
        return problems
    for s, rooms in enumerate(chrom.rooms_by_session):
        unknown = [r for r in rooms if r not in quota]
        if unknown:
            problems.append(f"session {s} uses unknown rooms {unknown}")
            continue
        if len(set(rooms)) != len(rooms):
            problems.append(f"session {s} lists a room more than once")
        if need[s] == 0:
            if rooms:
                problems.append(f"session {s} seats nobody but reserves rooms")
            continue
        capacity = sum(quota[r] for r in rooms)
        if capacity < need[s]:
            problems.append(f"session {s} seats {need[s]} students in {capacity} places")
    return problems


def seed_room_chromosome(
    classrooms: Sequence[Classroom],
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
    rng: random.Random,
) -> RoomChromosome:
    """Per session, draw distinct rooms until the headcount is covered.

    Drawing stops the moment cumulative quota reaches the headcount, so seeds
    never carry surplus rooms.
    """
    sessions: list[tuple[str, ...]] = []
    for s, required in enumerate(_counts(headcounts)):
        if required == 0:
            sessions.append(())
            continue
        pool = list(classrooms)
        picked: list[str] = []
        capacity = 0
        while capacity < required:
            if not pool:
                raise InfeasibleRooms(
                    f"session {s} needs {required} seats, all rooms offer {capacity}"
                )
            room = pool.pop(rng.randrange(len(pool)))
            picked.append(room.id)
            capacity += room.quota
        sessions.append(tuple(picked))
    return RoomChromosome(tuple(sessions))


def stage2_cost(
    chrom: RoomChromosome,
    classrooms: Sequence[Classroom],
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
) -> RoomCost:
    """Vacancy/supervisor/building cost rows for a feasible chromosome."""
    problems = room_violations(chrom, classrooms, headcounts)
    if problems:
        raise InfeasibleRooms("; ".join(problems))
    need = _counts(headcounts)
    by_id = {r.id: r for r in classrooms}
    rows = []
    for s, rooms in enumerate(chrom.rooms_by_session):
        if not rooms:
            rows.append(SessionRoomCost(0, 0, 0))
            continue
        capacity = sum(by_id[r].quota for r in rooms)
        supervisors = sum(by_id[r].supervisors for r in rooms)
        buildings = len({by_id[r].building for r in rooms})
        rows.append(SessionRoomCost(capacity - need[s], supervisors, buildings))
    return RoomCost(tuple(rows))


def stage2_fitness(cost: RoomCost) -> Fraction:
    """Reciprocal objective as an exact fraction."""
    if cost.total == 0:
        raise ZeroCost("cost is zero, reciprocal fitness is undefined")
    return Fraction(1, cost.total)


def stage2_selection_weights(costs: Sequence[int]) -> list[int]:
    """Population cost total divided by each cost, rounded half-up.

    Cheaper assignments get more wheel sectors; every weight is at least 1
    because no cost exceeds the total.
    """
    if any(c <= 0 for c in costs):
        raise ZeroCost("every cost must be positive")
    total = sum(costs)
    return [(2 * total + c) // (2 * c) for c in costs]


def crossover_rooms(
    a: RoomChromosome, b: RoomChromosome, rng: random.Random
) -> tuple[RoomChromosome, RoomChromosome]:
    """Two-point crossover exchanging whole session slots.

    The swap is by session slot, so room lists of different lengths move
    between parents intact.
    """
    if len(a.rooms_by_session) != len(b.rooms_by_session):
        raise ValueError("parents must have the same session count")
    lo, hi = sorted(rng.sample(range(len(a.rooms_by_session) + 1), 2))
    sa, sb = list(a.rooms_by_session), list(b.rooms_by_session)
    sa[lo:hi], sb[lo:hi] = sb[lo:hi], sa[lo:hi]
    return RoomChromosome(tuple(sa)), RoomChromosome(tuple(sb))


def mutate_room_swap(chrom: RoomChromosome, rng: random.Random) -> RoomChromosome:
    """Swap the rooms at two distinct flat gene positions."""
    flat = [r for session in chrom.rooms_by_session for r in session]
    if len(flat) < 2:
        return chrom
    i, j = rng.sample(range(len(flat)), 2)
    flat[i], flat[j] = flat[j], flat[i]
    rebuilt = []
    cursor = 0
    for session in chrom.rooms_by_session:
        rebuilt.append(tuple(flat[cursor : cursor + len(session)]))
        cursor += len(session)
    return RoomChromosome(tuple(rebuilt))


def repair_room_chromosome(
    chrom: RoomChromosome,
    classrooms: Sequence[Classroom],
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
    rng: random.Random,
) -> RoomChromosome:
    """Restore in-session uniqueness and coverage; identity on feasible input.

    Within each session, every repeat of an already-seen room is replaced by
    a uniformly random room not yet used in that session; then rooms are
    appended at random until the quota sum covers the headcount.  Surplus
    rooms are never trimmed (they cost vacancies and supervisors, which
    selection punishes).  Sessions seating nobody lose their rooms.
    """
    if not room_violations(chrom, classrooms, headcounts):
        return chrom
    need = _counts(headcounts)
    by_id = {r.id: r for r in classrooms}
    sessions: list[tuple[str, ...]] = []
    for s, rooms in enumerate(chrom.rooms_by_session):
        if need[s] == 0:
            sessions.append(())
            continue
        kept: list[str] = []
        for r in rooms:
            if r not in by_id:
                continue
            if r in kept:
                unused = [c.id for c in classrooms if c.id not in kept]
                if not unused:
                    continue  # session already uses every room; drop the repeat
                r = unused[rng.randrange(len(unused))]
            kept.append(r)
        capacity = sum(by_id[r].quota for r in kept)
        pool = [c for c in classrooms if c.id not in kept]
        while capacity < need[s]:
            if not pool:
                raise InfeasibleRooms(
                    f"session {s} needs {need[s]} seats, all rooms offer {capacity}"
                )
            room = pool.pop(rng.randrange(len(pool)))
            kept.append(room.id)
            capacity += room.quota
        sessions.append(tuple(kept))
    return RoomChromosome(tuple(sessions))


class RoomProblem(GaProblem):
    """Stage-two GA wiring over fixed classrooms and per-session headcounts."""

    def __init__(
        self,
        classrooms: Sequence[Classroom],
        headcounts: Sequence[SessionHeadcount] | Sequence[int],
        params: SchedulingParams,
    ):
        self.classrooms = tuple(classrooms)
        self.headcounts = _counts(headcounts)
        self.params = params

    def seed_individual(self, rng: random.Random) -> RoomChromosome:
        return seed_room_chromosome(self.classrooms, self.headcounts, rng)

    def raw_score(self, individual: RoomChromosome) -> int:
        return -stage2_cost(individual, self.classrooms, self.headcounts).total

    def fitness(self, raw_scores: Sequence[int]) -> list[int]:
        # Engine fitness slot carries the positive F values; the weights
        # function below inverts them so cheap assignments dominate the wheel.
        return [-r for r in raw_scores]

    def selection_weights(self, fitness: Sequence[int]) -> list[int]:
        return stage2_selection_weights(fitness)

    def crossover(self, a, b, rng: random.Random):
        return crossover_rooms(a, b, rng)

    def mutate(self, individual, rng: random.Random):
        return mutate_room_swap(individual, rng)

    def repair(self, individual, rng: random.Random):
        return repair_room_chromosome(individual, self.classrooms, self.headcounts, rng)

    def is_feasible(self, individual) -> bool:
        return not room_violations(individual, self.classrooms, self.headcounts)


def evolve_rooms(
    classrooms: Sequence[Classroom],
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
    params: SchedulingParams,
) -> GaRunResult:
    """Evolve a classroom assignment for the given per-session headcounts."""
    params.validate()
    need = _counts(headcounts)
    if any(h < 0 for h in need):
        raise ValueError("headcounts must be non-negative")
    if all(h == 0 for h in need):
        raise ZeroCost("no session seats any student")
    return run_ga(RoomProblem(classrooms, need, params), params)
