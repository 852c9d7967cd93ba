"""Tab-separated instance directories: one table file per entity.

An instance directory holds ``departments.tsv``, ``courses.tsv``,
``students.tsv``, ``enrollments.tsv``, ``classrooms.tsv`` and ``params.tsv``.
Every file starts with a header row naming its columns; ``params.tsv`` is a
two-column key/value table.  Loading parses, then validates, so callers get
either a usable instance or a precise error.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Callable, Sequence

from .model import (
    Classroom,
    Course,
    Department,
    Enrollment,
    ExamInstance,
    SchedulingParams,
    Student,
    ValidationError,
    validate_instance,
)


class ParseError(Exception):
    """A malformed table row, reported as path:line: message."""

    def __init__(self, path: str | Path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line
        self.message = message


DEPARTMENT_COLUMNS = ("code", "name")
COURSE_COLUMNS = ("code", "name", "credit", "department_code", "is_common", "exam_minutes")
STUDENT_COLUMNS = ("id", "name", "department_code")
ENROLLMENT_COLUMNS = ("student_id", "course_code", "department_code")
CLASSROOM_COLUMNS = ("id", "building", "name", "quota", "supervisors")
PARAM_COLUMNS = ("key", "value")

# Parameter key -> converter from field text; also fixes the set of legal keys.
_PARAM_PARSERS: dict[str, Callable[[str], object]] = {
    "max_session_minutes": int,
    "population_size": int,
    "crossover_rate": float,
    "mutation_rate": float,
    "elite_count": int,
    "max_generations": int,
    "stagnation_limit": int,
    "seed": int,
    "seeding_retries": int,
    "institution": str,
    "exam": str,
}


def _read_rows(path: Path, columns: Sequence[str]) -> list[tuple[int, list[str]]]:
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ParseError(path, 0, "file not found") from None
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ParseError(path, 1, f"missing header row {list(columns)}")
    header = lines[0].split("\t")
    if header != list(columns):
        raise ParseError(path, 1, f"header {header} does not match {list(columns)}")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if line == "":
            continue
        fields = line.split("\t")
        if len(fields) != len(columns):
            raise ParseError(
                path, lineno, f"expected {len(columns)} fields, found {len(fields)}"
            )
        rows.append((lineno, fields))
    return rows


def _to_int(value: str, path: Path, lineno: int, field: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(path, lineno, f"{field} must be an integer, got {value!r}") from None


def _to_bool(value: str, path: Path, lineno: int, field: str) -> bool:
    if value == "true":
        return True
    if value == "false":
        return False
    raise ParseError(path, lineno, f"{field} must be 'true' or 'false', got {value!r}")


def _load_params(path: Path) -> SchedulingParams:
    values: dict[str, object] = {}
    for lineno, (key, raw) in _read_rows(path, PARAM_COLUMNS):
        parser = _PARAM_PARSERS.get(key)
        if parser is None:
            raise ParseError(path, lineno, f"unknown parameter {key!r}")
        if key in values:
            raise ParseError(path, lineno, f"duplicate parameter {key!r}")
        try:
            values[key] = parser(raw)
        except ValueError:
            raise ParseError(path, lineno, f"bad value {raw!r} for {key}") from None
    if "max_session_minutes" not in values:
        raise ParseError(path, 1, "missing required parameter max_session_minutes")
    return SchedulingParams(**values)  # type: ignore[arg-type]


def load_instance(path: str | Path) -> ExamInstance:
    """Parse and validate an instance directory.

    Raises ParseError on the first malformed row and ValidationError (with
    the full violation report) when the parsed data is inconsistent.
    """
    base = Path(path)
    if not base.is_dir():
        raise ParseError(base, 0, "not an instance directory")

    departments = tuple(
        Department(code=f[0], name=f[1])
        for _, f in _read_rows(base / "departments.tsv", DEPARTMENT_COLUMNS)
    )
    p = base / "courses.tsv"
    courses = tuple(
        Course(
            code=f[0],
            name=f[1],
            credit=_to_int(f[2], p, n, "credit"),
            department_code=f[3],
            is_common=_to_bool(f[4], p, n, "is_common"),
            exam_minutes=_to_int(f[5], p, n, "exam_minutes"),
        )
        for n, f in _read_rows(p, COURSE_COLUMNS)
    )
    students = tuple(
        Student(id=f[0], name=f[1], department_code=f[2])
        for _, f in _read_rows(base / "students.tsv", STUDENT_COLUMNS)
    )
    enrollments = tuple(
        Enrollment(student_id=f[0], course_code=f[1], department_code=f[2])
        for _, f in _read_rows(base / "enrollments.tsv", ENROLLMENT_COLUMNS)
    )
    p = base / "classrooms.tsv"
    classrooms = tuple(
        Classroom(
            id=f[0],
            building=f[1],
            name=f[2],
            quota=_to_int(f[3], p, n, "quota"),
            supervisors=_to_int(f[4], p, n, "supervisors"),
        )
        for n, f in _read_rows(p, CLASSROOM_COLUMNS)
    )
    params = _load_params(base / "params.tsv")

    instance = ExamInstance(departments, courses, students, enrollments, classrooms, params)
    report = validate_instance(instance)
    if not report.ok:
        raise ValidationError(report)
    return instance


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_table(path: Path, columns: Sequence[str], rows: Sequence[Sequence[object]]) -> None:
    lines = ["\t".join(columns)]
    for row in rows:
        fields = []
        for value in row:
            text = str(value)
            if "\t" in text or "\n" in text:
                raise ValueError(f"field {text!r} cannot be stored in a tab-separated table")
            fields.append(text)
        lines.append("\t".join(fields))
    _atomic_write(path, "\n".join(lines) + "\n")


def write_instance(instance: ExamInstance, path: str | Path) -> None:
    """Write an instance directory that load_instance reads back unchanged."""
    base = Path(path)
    base.mkdir(parents=True, exist_ok=True)
    _write_table(
        base / "departments.tsv",
        DEPARTMENT_COLUMNS,
        [(d.code, d.name) for d in instance.departments],
    )
    _write_table(
        base / "courses.tsv",
        COURSE_COLUMNS,
        [
            (c.code, c.name, c.credit, c.department_code, "true" if c.is_common else "false", c.exam_minutes)
            for c in instance.courses
        ],
    )
    _write_table(
        base / "students.tsv",
        STUDENT_COLUMNS,
        [(s.id, s.name, s.department_code) for s in instance.students],
    )
    _write_table(
        base / "enrollments.tsv",
        ENROLLMENT_COLUMNS,
        [(e.student_id, e.course_code, e.department_code) for e in instance.enrollments],
    )
    _write_table(
        base / "classrooms.tsv",
        CLASSROOM_COLUMNS,
        [(r.id, r.building, r.name, r.quota, r.supervisors) for r in instance.classrooms],
    )
    fields = [
        ("max_session_minutes", instance.params.max_session_minutes),
        ("population_size", instance.params.population_size),
        ("crossover_rate", instance.params.crossover_rate),
        ("mutation_rate", instance.params.mutation_rate),
        ("elite_count", instance.params.elite_count),
        ("max_generations", instance.params.max_generations),
        ("stagnation_limit", instance.params.stagnation_limit),
        ("seed", instance.params.seed),
        ("seeding_retries", instance.params.seeding_retries),
        ("institution", instance.params.institution),
        ("exam", instance.params.exam),
    ]
    _write_table(base / "params.tsv", PARAM_COLUMNS, fields)
