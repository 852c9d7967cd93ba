"""Exhaustive oracles and the greedy baseline.

The oracles are themselves verification tools, so they get their own checks:
hand-countable instances, agreement with the production cost function on the
solutions they return, and budget guards.
"""

import dataclasses
import itertools

import pytest

import examsched as ex
from test_rooms import TOY_ROOMS
from test_sessions import toy_two_dept_instance

from conftest import toy_rooms


class TestExhaustiveStage1:
    def test_toy_optimum_is_three(self):
        inst = toy_two_dept_instance()
        result = ex.exhaustive_stage1(inst, 2)
        assert result.best_value == 3
        parts = {frozenset(s) for s in result.best_solution.sessions}
        unified = ex.unify_common_courses(inst)
        by_code = {c.course_code: c.unified_id for c in unified}
        assert parts == {
            frozenset((by_code["A"], by_code["B"])),
            frozenset((by_code["C"], by_code["D"])),
        }
        # 4 courses, cap of 2 per session: {AB|CD}, {AC|BD}, {AD|BC}.
        assert result.enumerated == 3

    def test_agrees_with_production_scoring(self):
        inst = toy_two_dept_instance()
        unified = ex.unify_common_courses(inst)
        index = ex.EnrollmentIndex(unified)
        result = ex.exhaustive_stage1(inst, 2)
        assert ex.stage1_raw_score(result.best_solution, index) == result.best_value

    def test_single_session_scores_everything_together(self):
        # Only one packing exists when the cap is lifted to hold all four.
        inst = toy_two_dept_instance()
        unified = ex.unify_common_courses(inst)
        index = ex.EnrollmentIndex(unified)
        wide = dataclasses.replace(
            inst, params=dataclasses.replace(inst.params, max_session_minutes=120)
        )
        result = ex.exhaustive_stage1(wide, 1)
        assert result.enumerated == 1
        assert result.best_value == ex.stage1_raw_score(result.best_solution, index)

    def test_budget_guards(self, gazi):
        with pytest.raises(ex.BudgetExceeded):
            ex.exhaustive_stage1(gazi, 4)  # 19 courses is over the cap
        inst = toy_two_dept_instance()
        with pytest.raises(ex.BudgetExceeded):
            ex.exhaustive_stage1(inst, 4, max_sessions=3)

    def test_infeasible_partition_raises(self):
        inst = toy_two_dept_instance()
        # Four 30-minute exams cannot fit one 60-minute session.
        with pytest.raises(ValueError, match="no duration-feasible partition"):
            ex.exhaustive_stage1(inst, 1)


class TestExhaustiveStage2:
    def test_toy_single_room(self):
        result = ex.exhaustive_stage2(TOY_ROOMS, [10])
        assert result.best_value == 13
        assert result.best_solution.rooms_by_session == (("A",),)
        assert result.enumerated == 7  # all non-empty subsets of 3 rooms

    def test_bundled_per_session_minima(self, gazi):
        # Minima for the department-pure headcounts, each subset re-checked
        # by hand arithmetic:
        #   133 -> {S1}: 135 seats, 2 + 3 + 10
        #   162 -> {S12,S13,S14}: 164 seats, one building, 2 + 5 + 10
        #   389 -> {S2,S3,S6,S8,S9}: 389 seats exactly, 0 + 9 + 20
        #   427 -> {S2,S3,S4,S5,S6,S8,S9}: 428 seats, 1 + 11 + 20
        rooms = gazi.classrooms
        expected = {133: 15, 162: 17, 389: 29, 427: 32}
        for head, best in expected.items():
            result = ex.exhaustive_stage2(rooms, [head], max_rooms=15)
            assert result.best_value == best, head
        combined = ex.exhaustive_stage2(
            rooms, [133, 162, 389, 427], max_rooms=15, max_sessions=4
        )
        assert combined.best_value == 15 + 17 + 29 + 32

    def test_agrees_with_production_cost(self):
        for trial in range(25):
            rooms, heads = toy_rooms(trial)
            result = ex.exhaustive_stage2(rooms, heads)
            cost = ex.stage2_cost(result.best_solution, rooms, heads)
            assert cost.total == result.best_value

    def test_beats_or_matches_every_subset_choice(self):
        # Cross-check the minimum against a second, itertools-based sweep.
        rooms, heads = toy_rooms(3)
        head = heads[0]
        best = None
        for k in range(1, len(rooms) + 1):
            for combo in itertools.combinations(rooms, k):
                if sum(r.quota for r in combo) < head:
                    continue
                cost = (
                    sum(r.quota for r in combo) - head
                    + sum(r.supervisors for r in combo)
                    + 10 * len({r.building for r in combo})
                )
                best = cost if best is None else min(best, cost)
        assert ex.exhaustive_stage2(rooms, [head]).best_value == best

    def test_zero_headcount_session_skipped(self):
        result = ex.exhaustive_stage2(TOY_ROOMS, [0, 10])
        assert result.best_solution.rooms_by_session[0] == ()
        assert result.best_value == 13

    def test_budget_guards(self):
        rooms = [ex.Classroom(f"R{i}", "B1", "r", 10, 1) for i in range(13)]
        with pytest.raises(ex.BudgetExceeded):
            ex.exhaustive_stage2(rooms, [5])
        with pytest.raises(ex.BudgetExceeded):
            ex.exhaustive_stage2(TOY_ROOMS, [1, 1, 1, 1])

    def test_uncoverable_headcount_raises(self):
        with pytest.raises(ex.InfeasibleRooms):
            ex.exhaustive_stage2(TOY_ROOMS, [1000])


class TestGreedyBaseline:
    def test_largest_rooms_first_on_bundled_data(self, gazi):
        chrom = ex.greedy_stage2_baseline(gazi.classrooms, [427])
        assert chrom.rooms_by_session == (("S2", "S6", "S1"),)
        assert ex.stage2_cost(chrom, gazi.classrooms, [427]).total == 36

    def test_always_feasible_on_random_toys(self):
        for trial in range(50):
            rooms, heads = toy_rooms(trial)
            chrom = ex.greedy_stage2_baseline(rooms, heads)
            assert ex.room_violations(chrom, rooms, heads) == []

    def test_never_beats_the_oracle(self):
        for trial in range(25):
            rooms, heads = toy_rooms(trial)
            greedy = ex.stage2_cost(ex.greedy_stage2_baseline(rooms, heads), rooms, heads)
            assert greedy.total >= ex.exhaustive_stage2(rooms, heads).best_value

    def test_deterministic(self, gazi):
        a = ex.greedy_stage2_baseline(gazi.classrooms, [133, 162, 389, 427])
        b = ex.greedy_stage2_baseline(gazi.classrooms, [133, 162, 389, 427])
        assert a == b

    def test_uncoverable_headcount_raises(self):
        with pytest.raises(ex.InfeasibleRooms):
            ex.greedy_stage2_baseline(TOY_ROOMS, [1000])
