"""Synthetic instance generation for tests, demos and benchmarks.

Instances follow the shape of the bundled vocational-school data: a few
departments with their own course lists, a block of shared first-year courses
every student takes, and buildings mixing large amphitheaters (3 supervisors)
with small classrooms (1 supervisor).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, fields
from pathlib import Path

from .instance_io import ParseError
from .model import (
    Classroom,
    Course,
    Department,
    Enrollment,
    ExamInstance,
    SchedulingParams,
    Student,
)


@dataclass(frozen=True)
class GeneratorSpec:
    departments: int
    students_per_department: int
    courses_per_department: int
    common_courses: int
    enrollment_probability: float
    buildings: int = 3
    amphitheaters_per_building: int = 2
    classrooms_per_building: int = 3
    exam_minutes: int = 30
    max_session_minutes: int = 150

    def validate(self) -> None:
        problems = []
        if self.departments < 1:
            problems.append("departments must be at least 1")
        if self.students_per_department < 1:
            problems.append("students_per_department must be at least 1")
        if self.courses_per_department < 0:
            problems.append("courses_per_department must be non-negative")
        if self.common_courses < 0:
            problems.append("common_courses must be non-negative")
        if self.courses_per_department + self.common_courses < 1:
            problems.append("at least one course is required")
        if not 0.0 <= self.enrollment_probability <= 1.0:
            problems.append("enrollment_probability must lie in [0, 1]")
        if self.buildings < 1:
            problems.append("buildings must be at least 1")
        if self.amphitheaters_per_building < 0 or self.classrooms_per_building < 0:
            problems.append("per-building room counts must be non-negative")
        if self.amphitheaters_per_building + self.classrooms_per_building < 1:
            problems.append("at least one room per building is required")
        if self.exam_minutes < 1:
            problems.append("exam_minutes must be positive")
        if self.exam_minutes > self.max_session_minutes:
            problems.append("exam_minutes cannot exceed max_session_minutes")
        if problems:
            raise ValueError("; ".join(problems))


def load_generator_spec(path: str | Path) -> GeneratorSpec:
    """Read a GeneratorSpec from a JSON object file."""
    target = Path(path)
    try:
        payload = json.loads(target.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ParseError(target, 0, "file not found") from None
    except json.JSONDecodeError as exc:
        raise ParseError(target, exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(payload, dict):
        raise ParseError(target, 1, "generator spec must be a JSON object")
    known = {f.name for f in fields(GeneratorSpec)}
    unknown = sorted(set(payload) - known)
    if unknown:
        raise ParseError(target, 1, f"unknown generator fields {unknown}")
    try:
        spec = GeneratorSpec(**payload)
    except TypeError as exc:
        raise ParseError(target, 1, str(exc)) from None
    spec.validate()
    return spec


def generate_instance(spec: GeneratorSpec, seed: int) -> ExamInstance:
    """Deterministic synthetic instance: same spec and seed, same data."""
    spec.validate()
    rng = random.Random(seed)

    departments = tuple(
        Department(code=f"DEP{d + 1:02d}", name=f"Department {d + 1}")
        for d in range(spec.departments)
    )

    students: list[Student] = []
    by_department: dict[str, list[Student]] = {}
    counter = 0
    for dept in departments:
        cohort = []
        for _ in range(spec.students_per_department):
            counter += 1
            student = Student(id=f"st{counter:04d}", name=f"Student {counter:04d}", department_code=dept.code)
            cohort.append(student)
            students.append(student)
        by_department[dept.code] = cohort

    courses: list[Course] = []
    enrollments: list[Enrollment] = []
    for k in range(spec.common_courses):
        code = f"COM-{101 + 2 * k}"
        credit = rng.choice((2, 4))
        for dept in departments:
            courses.append(
                Course(
                    code=code,
                    name=f"Common Course {k + 1}",
                    credit=credit,
                    department_code=dept.code,
                    is_common=True,
                    exam_minutes=spec.exam_minutes,
                )
            )
            enrollments.extend(
                Enrollment(s.id, code, dept.code) for s in by_department[dept.code]
            )
    for dept in departments:
        for k in range(spec.courses_per_department):
            code = f"{dept.code}-{101 + 2 * k}"
            courses.append(
                Course(
                    code=code,
                    name=f"{dept.code} Course {k + 1}",
                    credit=rng.choice((2, 4)),
                    department_code=dept.code,
                    is_common=False,
                    exam_minutes=spec.exam_minutes,
                )
            )
            cohort = by_department[dept.code]
            roster = [s for s in cohort if rng.random() < spec.enrollment_probability]
            if not roster:  # every exam must have at least one examinee
                roster = [cohort[rng.randrange(len(cohort))]]
            enrollments.extend(Enrollment(s.id, code, dept.code) for s in roster)

    classrooms: list[Classroom] = []
    room_number = 0
    for b in range(spec.buildings):
        building = f"Building_{b + 1}"
        for a in range(spec.amphitheaters_per_building):
            room_number += 1
            classrooms.append(
                Classroom(
                    id=f"S{room_number}",
                    building=building,
                    name=f"Anfi_{a + 1}",
                    quota=rng.randint(110, 160),
                    supervisors=3,
                )
            )
        for c in range(spec.classrooms_per_building):
            room_number += 1
            classrooms.append(
                Classroom(
                    id=f"S{room_number}",
                    building=building,
                    name=f"Class_{c + 1}",
                    quota=rng.randint(15, 40),
                    supervisors=1,
                )
            )

    params = SchedulingParams(max_session_minutes=spec.max_session_minutes, seed=seed)
    return ExamInstance(
        departments=departments,
        courses=tuple(courses),
        students=tuple(students),
        enrollments=tuple(enrollments),
        classrooms=tuple(classrooms),
        params=params,
    )
