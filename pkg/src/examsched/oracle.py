"""Brute-force optima and a greedy baseline for small instances.

These are the verification backstops for both GA stages.  All scoring here is
restated from first principles (plain set arithmetic, inline cost sums) so
the oracle cannot inherit a defect from the code it checks.

Enumeration budgets are module constants; callers may override them per call,
at their own expense.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Sequence

from .model import ExamInstance, unify_common_courses
from .rooms import InfeasibleRooms, RoomChromosome, SessionHeadcount
from .sessions import SessionChromosome

MAX_STAGE1_COURSES = 10
MAX_STAGE1_SESSIONS = 3
MAX_STAGE2_ROOMS = 12
MAX_STAGE2_SESSIONS = 3


class BudgetExceeded(RuntimeError):
    """The instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleResult:
    best_value: int
    best_solution: Any
    enumerated: int


def _students(headcounts: Sequence[SessionHeadcount] | Sequence[int]) -> tuple[int, ...]:
    return tuple(h.students if isinstance(h, SessionHeadcount) else int(h) for h in headcounts)


def exhaustive_stage1(
    instance: ExamInstance,
    session_count: int,
    *,
    max_courses: int = MAX_STAGE1_COURSES,
    max_sessions: int = MAX_STAGE1_SESSIONS,
) -> OracleResult:
    """True optimum of the session-partition objective, by enumeration.

    Walks every partition of the unified courses into at most session_count
    duration-feasible groups.  Group order and in-group order are ignored
    (the score is a set function), which canonical recursion guarantees by
    always opening new groups with the lowest unplaced course.
    """
    courses = unify_common_courses(instance)
    if len(courses) > max_courses:
        raise BudgetExceeded(f"{len(courses)} courses exceed the cap of {max_courses}")
    if session_count > max_sessions:
        raise BudgetExceeded(f"{session_count} sessions exceed the cap of {max_sessions}")
    if session_count < 1:
        raise ValueError("session_count must be positive")

    cap = instance.params.max_session_minutes
    best_value: int | None = None
    best_parts: list[list[int]] = []
    enumerated = 0

    def score(parts: list[list[int]]) -> int:
        total = 0
        for part in parts:
            rosters = [courses[i].enrolled_students for i in part]
            union = frozenset().union(*rosters)
            common = rosters[0]
            for r in rosters[1:]:
                common = common & r
            total += len(common) - (len(union) - len(common))
        return total

    def walk(i: int, parts: list[list[int]], loads: list[int]) -> None:
        nonlocal best_value, best_parts, enumerated
        if i == len(courses):
            enumerated += 1
            value = score(parts)
            if best_value is None or value > best_value:
                best_value = value
                best_parts = [list(p) for p in parts]
            return
        minutes = courses[i].exam_minutes
        for p in range(len(parts)):
            if loads[p] + minutes <= cap:
                parts[p].append(i)
                loads[p] += minutes
                walk(i + 1, parts, loads)
                loads[p] -= minutes
                parts[p].pop()
        if len(parts) < session_count and minutes <= cap:
            parts.append([i])
            loads.append(minutes)
            walk(i + 1, parts, loads)
            parts.pop()
            loads.pop()

    walk(0, [], [])
    if best_value is None:
        raise ValueError(f"no duration-feasible partition into {session_count} sessions exists")
    sessions = [tuple(courses[i].unified_id for i in part) for part in best_parts]
    sessions += [()] * (session_count - len(sessions))
    return OracleResult(best_value, SessionChromosome(tuple(sessions)), enumerated)


def exhaustive_stage2(
    classrooms: Sequence,
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
    *,
    max_rooms: int = MAX_STAGE2_ROOMS,
    max_sessions: int = MAX_STAGE2_SESSIONS,
) -> OracleResult:
    """True minimum seating cost, by per-session subset enumeration.

    Sessions are independent, so each session's covering subsets are scanned
    separately and the per-session minima compose.  Ties keep the subset
    found first (lowest bitmask over input order), making results repeatable.
    """
    need = _students(headcounts)
    if len(classrooms) > max_rooms:
        raise BudgetExceeded(f"{len(classrooms)} rooms exceed the cap of {max_rooms}")
    if len(need) > max_sessions:
        raise BudgetExceeded(f"{len(need)} sessions exceed the cap of {max_sessions}")

    rooms = list(classrooms)
    total = 0
    chosen: list[tuple[str, ...]] = []
    enumerated = 0
    for s, students in enumerate(need):
        if students == 0:
            chosen.append(())
            continue
        best_cost: int | None = None
        best_subset: tuple[str, ...] = ()
        for mask in range(1, 1 << len(rooms)):
            enumerated += 1
            members = [rooms[i] for i in range(len(rooms)) if mask >> i & 1]
            capacity = sum(r.quota for r in members)
            if capacity < students:
                continue
            cost = (
                (capacity - students)
                + sum(r.supervisors for r in members)
                + 10 * len({r.building for r in members})
            )
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best_subset = tuple(r.id for r in members)
        if best_cost is None:
            raise InfeasibleRooms(
                f"session {s} needs {students} seats, all rooms offer "
                f"{sum(r.quota for r in rooms)}"
            )
        total += best_cost
        chosen.append(best_subset)
    return OracleResult(total, RoomChromosome(tuple(chosen)), enumerated)


def greedy_stage2_baseline(
    classrooms: Sequence,
    headcounts: Sequence[SessionHeadcount] | Sequence[int],
) -> RoomChromosome:
    """Largest-rooms-first assignment; the deterministic benchmark baseline."""
    ordered = sorted(classrooms, key=lambda r: (-r.quota, r.id))
    sessions: list[tuple[str, ...]] = []
    for s, students in enumerate(_students(headcounts)):
        if students == 0:
            sessions.append(())
            continue
        picked: list[str] = []
        capacity = 0
        for room in ordered:
            if capacity >= students:
                break
            picked.append(room.id)
            capacity += room.quota
        if capacity < students:
            raise InfeasibleRooms(
                f"session {s} needs {students} seats, all rooms offer {capacity}"
            )
        sessions.append(tuple(picked))
    return RoomChromosome(tuple(sessions))
