"""examsched: a deterministic two-stage genetic algorithm for exam scheduling.

Stage 1 partitions courses into exam sessions so students sit as many of
their exams as possible in one sitting; stage 2 seats each session in
classrooms at minimal cost (vacant seats, supervisors, buildings).  Both
stages run on one seeded random stream, so every result is reproducible.
"""

from .engine import (
    AllZeroWeights,
    GaProblem,
    GaRunResult,
    RepairFailed,
    SeedingFailed,
    roulette_select,
    run_ga,
    should_terminate,
)
from .gazi import build_gazi_instance
from .generate import GeneratorSpec, generate_instance, load_generator_spec
from .instance_io import ParseError, load_instance, write_instance
from .model import (
    COMMON_DEPARTMENT,
    Classroom,
    Course,
    Department,
    Enrollment,
    EnrollmentIndex,
    ExamInstance,
    SchedulingParams,
    SessionStats,
    Student,
    UnificationError,
    UnifiedCourse,
    ValidationError,
    ValidationReport,
    required_session_count,
    session_stats,
    unify_common_courses,
    validate_instance,
)
from .oracle import (
    BudgetExceeded,
    OracleResult,
    exhaustive_stage1,
    exhaustive_stage2,
    greedy_stage2_baseline,
)
from .report import render_report
from .rooms import (
    InfeasibleRooms,
    RoomChromosome,
    RoomCost,
    SessionHeadcount,
    SessionRoomCost,
    ZeroCost,
    crossover_rooms,
    evolve_rooms,
    mutate_room_swap,
    repair_room_chromosome,
    room_violations,
    seed_room_chromosome,
    session_headcounts,
    stage2_cost,
    stage2_fitness,
    stage2_selection_weights,
)
from .schedule import (
    BenchRow,
    InconsistentSchedule,
    Schedule,
    SessionPlan,
    bench_populations,
    read_schedule,
    solve,
    write_schedule,
)
from .sessions import (
    SessionChromosome,
    chromosome_violations,
    crossover_sessions,
    evolve_sessions,
    mutate_course_swap,
    repair_course_chromosome,
    seed_course_chromosome,
    stage1_fitness,
    stage1_raw_score,
    stage1_selection_weights,
)

__version__ = "0.1.0"

__all__ = [
    "AllZeroWeights",
    "BenchRow",
    "BudgetExceeded",
    "COMMON_DEPARTMENT",
    "Classroom",
    "Course",
    "Department",
    "Enrollment",
    "EnrollmentIndex",
    "ExamInstance",
    "GaProblem",
    "GaRunResult",
    "GeneratorSpec",
    "InconsistentSchedule",
    "InfeasibleRooms",
    "OracleResult",
    "ParseError",
    "RepairFailed",
    "RoomChromosome",
    "RoomCost",
    "Schedule",
    "SchedulingParams",
    "SeedingFailed",
    "SessionChromosome",
    "SessionHeadcount",
    "SessionPlan",
    "SessionRoomCost",
    "SessionStats",
    "Student",
    "UnificationError",
    "UnifiedCourse",
    "ValidationError",
    "ValidationReport",
    "ZeroCost",
    "bench_populations",
    "build_gazi_instance",
    "chromosome_violations",
    "crossover_rooms",
    "crossover_sessions",
    "evolve_rooms",
    "evolve_sessions",
    "exhaustive_stage1",
    "exhaustive_stage2",
    "generate_instance",
    "greedy_stage2_baseline",
    "load_generator_spec",
    "load_instance",
    "mutate_course_swap",
    "mutate_room_swap",
    "read_schedule",
    "render_report",
    "repair_course_chromosome",
    "repair_room_chromosome",
    "required_session_count",
    "room_violations",
    "roulette_select",
    "run_ga",
    "seed_course_chromosome",
    "seed_room_chromosome",
    "session_headcounts",
    "session_stats",
    "should_terminate",
    "solve",
    "stage1_fitness",
    "stage1_raw_score",
    "stage1_selection_weights",
    "stage2_cost",
    "stage2_fitness",
    "stage2_selection_weights",
    "unify_common_courses",
    "validate_instance",
    "write_instance",
    "write_schedule",
]
