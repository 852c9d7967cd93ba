"""Bundled demonstration instance: a three-department midterm week.

Data shape: 3 distance-education departments, 27 course offerings (4 shared
first-year courses taught in all three departments plus 19 after merging),
427 students, and 15 rooms across 3 buildings.  Rosters are built from
integer id intervals, so enrollment patterns are exact and reproducible:
students within one department share their department's courses heavily,
and the shared courses partition the whole student body into per-department
sections.  Section boundaries intentionally do not align with department
boundaries (a section may seat students registered under a neighboring
department), which keeps every published per-section count while letting
department cohorts overlap realistically on the shared exams.
"""

from __future__ import annotations

from .model import (
    Classroom,
    Course,
    Department,
    Enrollment,
    ExamInstance,
    SchedulingParams,
    Student,
)

_DEPARTMENTS = (
    ("CP", "Computer Programming", 1, 112),
    ("BA", "Business Administration", 113, 245),
    ("AT", "Accounting and Taxation", 246, 427),
)

# Shared courses: (code, name, credit, per-department roster intervals).
# Section intervals are disjoint and cover exactly the published headcounts.
_COMMON_COURSES = (
    ("MATH-101", "Mathematics I", 4, {"CP": (1, 125), "BA": (126, 265), "AT": (266, 427)}),
    ("FL-101", "Foreign Language I", 4, {"CP": (1, 120), "BA": (121, 256), "AT": (257, 421)}),
    ("TUR-101", "Turkish Language I", 2, {"CP": (1, 115), "BA": (116, 249), "AT": (250, 409)}),
    ("HIST-101", "Principles of History I", 2, {"CP": (1, 118), "BA": (119, 248), "AT": (249, 406)}),
)

# Department-exclusive courses: (code, name, credit, roster interval).
_DEPARTMENT_COURSES = {
    "CP": (
        ("CP-101", "Algorithms and Programming I", 4, (1, 105)),
        ("CP-103", "Introduction to Computer Science", 4, (1, 112)),
        ("CP-105", "Discrete Mathematics", 4, (1, 105)),
    ),
    "BA": (
        ("BA-101", "Introduction to Business", 4, (113, 245)),
        ("BA-105", "Principles of Accounting", 4, (113, 244)),
        ("BA-107", "Business Mathematics", 2, (113, 242)),
        ("BA-109", "Microeconomics", 2, (113, 240)),
        ("BA-103", "Business Law", 2, (113, 237)),
        ("BA-111", "Office Applications", 2, (113, 240)),
    ),
    "AT": (
        ("AT-101", "General Accounting I", 4, (246, 405)),
        ("AT-103", "Commercial Documents", 2, (246, 397)),
        ("AT-105", "Tax Law", 4, (246, 407)),
        ("AT-107", "Accounting Applications", 2, (246, 400)),
        ("AT-109", "Public Finance", 2, (246, 403)),
        ("AT-113", "Professional Ethics", 2, (246, 405)),
    ),
}

_CLASSROOMS = (
    ("S1", "Building_1", "Anfi_1", 135, 3),
    ("S2", "Building_1", "Anfi_2", 154, 3),
    ("S3", "Building_1", "Class_1", 35, 1),
    ("S4", "Building_1", "Class_2", 24, 1),
    ("S5", "Building_1", "Class_3", 15, 1),
    ("S6", "Building_2", "Anfi_1", 145, 3),
    ("S7", "Building_2", "Anfi_2", 120, 3),
    ("S8", "Building_2", "Class_1", 30, 1),
    ("S9", "Building_2", "Class_2", 25, 1),
    ("S10", "Building_2", "Class_3", 25, 1),
    ("S11", "Building_3", "Anfi_1", 125, 3),
    ("S12", "Building_3", "Anfi_2", 120, 3),
    ("S13", "Building_3", "Class_1", 24, 1),
    ("S14", "Building_3", "Class_2", 20, 1),
    ("S15", "Building_3", "Class_3", 30, 1),
)

EXAM_MINUTES = 30


def _student_id(n: int) -> str:
    return f"s{n:03d}"


def build_gazi_instance() -> ExamInstance:
    """Construct the bundled instance; pure and identical on every call."""
    departments = tuple(Department(code, name) for code, name, _, _ in _DEPARTMENTS)

    students = tuple(
        Student(_student_id(n), f"Student {n:03d}", code)
        for code, _, lo, hi in _DEPARTMENTS
        for n in range(lo, hi + 1)
    )

    courses: list[Course] = []
    enrollments: list[Enrollment] = []
    # One block per department, shared courses first, mirroring the source
    # course catalogs; unification order (D1, D2, ...) follows from this.
    for dept_code, _, _, _ in _DEPARTMENTS:
        for code, name, credit, sections in _COMMON_COURSES:
            lo, hi = sections[dept_code]
            courses.append(Course(code, name, credit, dept_code, True, EXAM_MINUTES))
            enrollments.extend(
                Enrollment(_student_id(n), code, dept_code) for n in range(lo, hi + 1)
            )
        for code, name, credit, (lo, hi) in _DEPARTMENT_COURSES[dept_code]:
            courses.append(Course(code, name, credit, dept_code, False, EXAM_MINUTES))
            enrollments.extend(
                Enrollment(_student_id(n), code, dept_code) for n in range(lo, hi + 1)
            )

    classrooms = tuple(Classroom(*row) for row in _CLASSROOMS)

    params = SchedulingParams(
        max_session_minutes=150,
        population_size=10,
        crossover_rate=0.7,
        mutation_rate=0.05,
        elite_count=2,
        max_generations=200,
        stagnation_limit=50,
        seed=1,
        seeding_retries=20,
        institution="Gazi University",
        exam="Distance Education Midterm Exams",
    )
    return ExamInstance(
        departments=departments,
        courses=tuple(courses),
        students=students,
        enrollments=tuple(enrollments),
        classrooms=classrooms,
        params=params,
    )
