"""Plain-text rendering of a schedule: session table, seating table, totals."""

from __future__ import annotations

from .schedule import Schedule


def _table(headers: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def fmt(cells: list[str]) -> str:
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines.extend(fmt(row) for row in rows)
    return lines


def render_report(schedule: Schedule) -> str:
    """Human-readable report; rendering the same schedule twice is identical."""
    lines: list[str] = ["Exam schedule"]
    if schedule.params.institution:
        lines.append(f"Institution: {schedule.params.institution}")
    if schedule.params.exam:
        lines.append(f"Exam: {schedule.params.exam}")
    lines.append(f"Seed: {schedule.params.seed}")
    lines.append(f"Session overlap score: {schedule.stage1_score}")
    lines.append(f"Seating cost: {schedule.total_cost}")
    lines.append("")

    lines.append("Sessions")
    session_rows = [
        [
            str(i + 1),
            " ".join(p.course_codes),
            str(p.stats.total_exam_minutes),
            str(p.stats.common_students),
            str(p.stats.different_students),
            str(p.stats.distinct_enrollees),
        ]
        for i, p in enumerate(schedule.sessions)
    ]
    lines.extend(
        _table(["session", "courses", "minutes", "common", "different", "students"], session_rows)
    )
    lines.append("")

    lines.append("Seating")
    seat_rows = [
        [
            str(i + 1),
            " ".join(p.rooms),
            str(p.cost.vacancies),
            str(p.cost.supervisors),
            str(p.cost.buildings),
            str(p.cost.penalty),
        ]
        for i, p in enumerate(schedule.sessions)
    ]
    lines.extend(
        _table(["session", "rooms", "vacancies", "supervisors", "buildings", "cost"], seat_rows)
    )
    totals = (
        f"Totals: vacancies {sum(p.cost.vacancies for p in schedule.sessions)}, "
        f"supervisors {sum(p.cost.supervisors for p in schedule.sessions)}, "
        f"buildings {sum(p.cost.buildings for p in schedule.sessions)}, "
        f"cost {schedule.total_cost}"
    )
    lines.append(totals)
    return "\n".join(lines) + "\n"
