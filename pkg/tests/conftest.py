"""Shared fixtures: the bundled instance and seeded toy-instance builders.

The toy builders live here because both the unit tests and the acceptance
suite enumerate the same instance families.  All randomness is derived from
the trial number, so every test run sees the same instances.
"""

from __future__ import annotations

import random

import pytest

import examsched as ex


@pytest.fixture(scope="session")
def gazi():
    return ex.build_gazi_instance()


@pytest.fixture(scope="session")
def gazi_unified(gazi):
    return ex.unify_common_courses(gazi)


@pytest.fixture(scope="session")
def gazi_index(gazi_unified):
    return ex.EnrollmentIndex(gazi_unified)


def ffd_fits(minutes: list[int], bins: int, cap: int) -> bool:
    """First-fit-decreasing feasibility probe for the toy generator."""
    loads = [0] * bins
    for m in sorted(minutes, reverse=True):
        for b in range(bins):
            if loads[b] + m <= cap:
                loads[b] += m
                break
        else:
            return False
    return True


def toy_instance(trial: int):
    """Small two-department instance, or None when the draw's shape is off.

    Returns (instance, session_count).  Half the trials use uniform
    30-minute exams, half mix 20/40-minute exams; the session cap is grown
    until a first-fit-decreasing pass packs, so every returned instance is
    genuinely partitionable.
    """
    rng = random.Random(10_000 + trial)
    n_courses = rng.randint(4, 8)
    sessions = rng.randint(2, 3)
    uniform = trial % 2 == 0
    minutes = [30 if uniform else rng.choice((20, 30, 40)) for _ in range(n_courses)]
    total = sum(minutes)
    cap = max(max(minutes), -(-total // sessions))
    while -(-total // cap) > sessions or not ffd_fits(minutes, sessions, cap):
        cap += 10
    while -(-total // cap) < 2:
        cap -= 5
        if cap < max(minutes):
            cap = max(minutes)
            break
    sessions = -(-total // cap)
    if sessions < 2 or sessions > 3 or not ffd_fits(minutes, sessions, cap):
        return None
    n_students = rng.randint(6, 30)
    depts = (ex.Department("DA", "Dept A"), ex.Department("DB", "Dept B"))
    courses = tuple(
        ex.Course(f"C{i:02d}", f"Course {i}", 2, rng.choice(("DA", "DB")), False, minutes[i])
        for i in range(n_courses)
    )
    students = tuple(
        ex.Student(f"t{j:02d}", f"Toy {j}", rng.choice(("DA", "DB")))
        for j in range(n_students)
    )
    enrollments = []
    for s in students:
        picks = [c for c in courses if rng.random() < 0.4]
        if not picks:
            picks = [courses[rng.randrange(n_courses)]]
        for c in picks:
            enrollments.append(ex.Enrollment(s.id, c.code, c.department_code))
    params = ex.SchedulingParams(max_session_minutes=cap, seed=0)
    instance = ex.ExamInstance(
        departments=depts,
        courses=courses,
        students=students,
        enrollments=tuple(enrollments),
        classrooms=(),
        params=params,
    )
    return instance, sessions


def iter_toy_instances(count: int):
    """Yield (instance, session_count, restart_seed_base) for `count` toys."""
    made = 0
    trial = 0
    while made < count:
        built = toy_instance(trial)
        trial += 1
        if built is None:
            continue
        made += 1
        yield built[0], built[1], 20_000 + trial * 7


def toy_rooms(trial: int):
    """Random room inventory and session headcounts for one trial."""
    rng = random.Random(30_000 + trial)
    n_rooms = rng.randint(4, 12)
    rooms = []
    for i in range(n_rooms):
        amphi = rng.random() < 0.4
        rooms.append(
            ex.Classroom(
                f"R{i:02d}",
                f"B{rng.randint(1, 3)}",
                f"Room {i}",
                rng.randint(40, 90) if amphi else rng.randint(10, 35),
                3 if amphi else 1,
            )
        )
    total = sum(r.quota for r in rooms)
    n_sessions = rng.randint(1, 3)
    heads = [rng.randint(5, int(total * 0.8)) for _ in range(n_sessions)]
    return rooms, heads


def toy_room_seed_base(trial: int) -> int:
    return 40_000 + trial * 7
