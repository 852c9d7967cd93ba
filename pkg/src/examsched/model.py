"""Problem model for centralized exam scheduling.

An instance bundles departments, courses (possibly shared across departments),
students, enrollments, classrooms and solver parameters.  Shared courses are
merged into unified courses before optimization so that one exam serves every
department that teaches the course.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Department marker for a unified course merged from several departments.
COMMON_DEPARTMENT = "COMMON"


class ValidationError(Exception):
    """An instance failed validation; carries the full report."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.violations) or "invalid instance")
        self.report = report


class UnificationError(ValueError):
    """Copies of a shared course disagree on exam duration."""


@dataclass(frozen=True)
class Department:
    code: str
    name: str


@dataclass(frozen=True)
class Course:
    """One department's offering of a course.

    ``is_common`` marks courses taught identically in several departments;
    their exams are merged into a single sitting.
    """

    code: str
    name: str
    credit: int
    department_code: str
    is_common: bool
    exam_minutes: int


@dataclass(frozen=True)
class Student:
    id: str
    name: str
    department_code: str


@dataclass(frozen=True)
class Enrollment:
    """A student sitting one course's exam under one department's section."""

    student_id: str
    course_code: str
    department_code: str


@dataclass(frozen=True)
class Classroom:
    id: str
    building: str
    name: str
    quota: int
    supervisors: int


@dataclass(frozen=True)
class SchedulingParams:
    """Session cap plus GA knobs.  ``institution``/``exam`` are display labels."""

    max_session_minutes: int
    population_size: int = 10
    crossover_rate: float = 0.7
    mutation_rate: float = 0.05
    elite_count: int = 2
    max_generations: int = 200
    stagnation_limit: int = 50
    seed: int = 0
    seeding_retries: int = 20
    institution: str = ""
    exam: str = ""

    def validate(self) -> None:
        """Raise ValueError listing every out-of-range parameter."""
        problems = []
        if self.max_session_minutes <= 0:
            problems.append("max_session_minutes must be positive")
        if self.population_size < 1:
            problems.append("population_size must be at least 1")
        if not 0.0 <= self.crossover_rate <= 1.0:
            problems.append("crossover_rate must lie in [0, 1]")
        if not 0.0 <= self.mutation_rate <= 1.0:
            problems.append("mutation_rate must lie in [0, 1]")
        if not 0 <= self.elite_count < self.population_size:
            problems.append("elite_count must be smaller than population_size")
        if self.max_generations < 0:
            problems.append("max_generations must be non-negative")
        if self.stagnation_limit < 1:
            problems.append("stagnation_limit must be at least 1")
        if not 0 <= self.seed < 2**64:
            problems.append("seed must fit in 64 unsigned bits")
        if self.seeding_retries < 1:
            problems.append("seeding_retries must be at least 1")
        if problems:
            raise ValueError("; ".join(problems))


@dataclass(frozen=True)
class ExamInstance:
    departments: tuple[Department, ...]
    courses: tuple[Course, ...]
    students: tuple[Student, ...]
    enrollments: tuple[Enrollment, ...]
    classrooms: tuple[Classroom, ...]
    params: SchedulingParams


@dataclass(frozen=True)
class UnifiedCourse:
    """A mergeable exam unit: one sitting, one roster, one duration."""

    unified_id: str
    course_code: str
    exam_minutes: int
    department_code: str
    enrolled_students: frozenset[str]


@dataclass(frozen=True)
class SessionStats:
    """Overlap statistics for the set of courses examined together.

    ``common_students`` counts students enrolled in every course of the
    session, ``different_students`` the remaining distinct enrollees.
    """

    common_students: int
    different_students: int
    distinct_enrollees: int
    total_exam_minutes: int


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_instance(instance: ExamInstance) -> ValidationReport:
    """Check referential integrity and value ranges; never raises."""
    v: list[str] = []

    dept_codes = set()
    for d in instance.departments:
        if d.code in dept_codes:
            v.append(f"duplicate department code {d.code!r}")
        dept_codes.add(d.code)

    if not instance.courses:
        v.append("instance has no courses")

    course_keys = set()
    for c in instance.courses:
        key = (c.code, c.department_code)
        if key in course_keys:
            v.append(f"duplicate course {c.code!r} in department {c.department_code!r}")
        course_keys.add(key)
        if c.department_code not in dept_codes:
            v.append(f"course {c.code!r} references unknown department {c.department_code!r}")
        if c.credit < 0:
            v.append(f"course {c.code!r} has negative credit")
        if c.exam_minutes <= 0:
            v.append(f"course {c.code!r} has non-positive exam duration")
        elif c.exam_minutes > instance.params.max_session_minutes:
            v.append(
                f"course {c.code!r} needs {c.exam_minutes} minutes but sessions "
                f"allow only {instance.params.max_session_minutes}"
            )

    student_ids = set()
    for s in instance.students:
        if s.id in student_ids:
            v.append(f"duplicate student id {s.id!r}")
        student_ids.add(s.id)
        if s.department_code not in dept_codes:
            v.append(f"student {s.id!r} references unknown department {s.department_code!r}")

    room_ids = set()
    for r in instance.classrooms:
        if r.id in room_ids:
            v.append(f"duplicate classroom id {r.id!r}")
        room_ids.add(r.id)
        if r.quota < 1:
            v.append(f"classroom {r.id!r} has non-positive quota")
        if r.supervisors < 1:
            v.append(f"classroom {r.id!r} has non-positive supervisor count")

    seen_pairs = set()
    for e in instance.enrollments:
        if e.student_id not in student_ids:
            v.append(f"enrollment references unknown student {e.student_id!r}")
        if (e.course_code, e.department_code) not in course_keys:
            v.append(
                f"enrollment references unknown course {e.course_code!r} "
                f"in department {e.department_code!r}"
            )
        pair = (e.student_id, e.course_code)
        if pair in seen_pairs:
            v.append(f"student {e.student_id!r} enrolled more than once in {e.course_code!r}")
        seen_pairs.add(pair)

    try:
        instance.params.validate()
    except ValueError as exc:
        v.append(str(exc))

    return ValidationReport(tuple(v))


def unify_common_courses(instance: ExamInstance) -> tuple[UnifiedCourse, ...]:
    """Merge shared courses across departments into unified exam units.

    Every course flagged common collapses with same-code common courses into a
    single unit whose roster is the union of the per-department rosters.
    Output order follows first appearance in the instance course list, and
    unified ids D1, D2, ... are assigned in that order.
    """
    rosters: dict[tuple[str, str], set[str]] = {}
    for e in instance.enrollments:
        rosters.setdefault((e.course_code, e.department_code), set()).add(e.student_id)

    groups: dict[tuple, list[Course]] = {}
    for c in instance.courses:
        key = ("common", c.code) if c.is_common else ("single", c.code, c.department_code)
        groups.setdefault(key, []).append(c)

    unified: list[UnifiedCourse] = []
    for key, members in groups.items():
        durations = {c.exam_minutes for c in members}
        if len(durations) > 1:
            raise UnificationError(
                f"course {members[0].code!r} has conflicting exam durations "
                f"{sorted(durations)} across departments"
            )
        enrolled: set[str] = set()
        for c in members:
            enrolled |= rosters.get((c.code, c.department_code), set())
        department = COMMON_DEPARTMENT if key[0] == "common" else members[0].department_code
        unified.append(
            UnifiedCourse(
                unified_id=f"D{len(unified) + 1}",
                course_code=members[0].code,
                exam_minutes=members[0].exam_minutes,
                department_code=department,
                enrolled_students=frozenset(enrolled),
            )
        )
    return tuple(unified)


def required_session_count(courses: Sequence[UnifiedCourse], max_session_minutes: int) -> int:
    """Smallest session count whose combined capacity covers all exam minutes."""
    if not courses:
        raise ValueError("at least one course is required")
    if max_session_minutes <= 0:
        raise ValueError("max_session_minutes must be positive")
    longest = max(c.exam_minutes for c in courses)
    if longest > max_session_minutes:
        raise ValueError(
            f"a {longest}-minute exam cannot fit a {max_session_minutes}-minute session"
        )
    total = sum(c.exam_minutes for c in courses)
    return -(-total // max_session_minutes)


class EnrollmentIndex:
    """Boolean student-by-course matrix for fast overlap statistics."""

    def __init__(self, courses: Sequence[UnifiedCourse]):
        self._minutes = {c.unified_id: c.exam_minutes for c in courses}
        students: set[str] = set()
        for c in courses:
            students |= c.enrolled_students
        self.student_ids = tuple(sorted(students))
        rows = {s: i for i, s in enumerate(self.student_ids)}
        self._cols = {c.unified_id: j for j, c in enumerate(courses)}
        matrix = np.zeros((len(self.student_ids), len(courses)), dtype=bool)
        for j, c in enumerate(courses):
            for s in c.enrolled_students:
                matrix[rows[s], j] = True
        self._matrix = matrix

    def stats(self, unified_ids: Iterable[str]) -> SessionStats:
        ids = list(unified_ids)
        minutes = sum(self._minutes[i] for i in ids)
        if not ids or self._matrix.shape[0] == 0:
            return SessionStats(0, 0, 0, minutes)
        block = self._matrix[:, [self._cols[i] for i in ids]]
        distinct = int(block.any(axis=1).sum())
        common = int(block.all(axis=1).sum())
        return SessionStats(common, distinct - common, distinct, minutes)


def session_stats(session_courses: Iterable[str], index: EnrollmentIndex) -> SessionStats:
    """Overlap statistics for one session, given unified course ids."""
    return index.stats(session_courses)
