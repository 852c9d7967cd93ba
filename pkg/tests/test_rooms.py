"""Stage two: classroom assignment — cost rows, selection, operators, GA run."""

import dataclasses
import random
from fractions import Fraction

import pytest

import examsched as ex

# Published seating example on the bundled rooms: four sessions seating
# (133, 162, 389, 427) students, with hand-checked per-session cost rows.
EXAMPLE_HEADS = (133, 162, 389, 427)
EXAMPLE_ROOMS = (
    ("S1",),
    ("S3", "S4", "S7"),
    ("S6", "S7", "S9", "S10", "S11"),
    ("S13", "S7", "S8", "S9", "S11", "S12"),
)
EXAMPLE_ROWS = [(2, 3, 1), (17, 5, 2), (51, 11, 2), (17, 12, 2)]
EXAMPLE_TOTAL = 188

# A reference population of (vacancies, supervisors, buildings) triples with
# the published objective values and roulette weights.
COST_TRIPLES = [
    (155, 28, 6), (32, 30, 7), (72, 32, 11), (50, 32, 9), (97, 30, 10),
    (105, 33, 10), (87, 31, 7), (145, 34, 9), (162, 32, 8), (20, 27, 6),
]
COST_F = [243, 132, 214, 172, 227, 238, 188, 269, 274, 107]
COST_WEIGHTS = [8, 16, 10, 12, 9, 9, 11, 8, 8, 19]

TOY_ROOMS = (
    ex.Classroom("A", "B1", "a", 12, 1),
    ex.Classroom("B", "B1", "b", 5, 1),
    ex.Classroom("C", "B2", "c", 6, 1),
)


@pytest.fixture(scope="module")
def classrooms(request):
    return ex.build_gazi_instance().classrooms


class TestCostRows:
    def test_example_rows_and_total(self, classrooms):
        chrom = ex.RoomChromosome(EXAMPLE_ROOMS)
        cost = ex.stage2_cost(chrom, classrooms, EXAMPLE_HEADS)
        rows = [(r.vacancies, r.supervisors, r.buildings) for r in cost.sessions]
        assert rows == EXAMPLE_ROWS
        assert cost.total == EXAMPLE_TOTAL
        assert cost.vacancies == sum(r[0] for r in EXAMPLE_ROWS)
        assert cost.supervisors == sum(r[1] for r in EXAMPLE_ROWS)
        assert cost.buildings == sum(r[2] for r in EXAMPLE_ROWS)

    def test_three_room_toy(self):
        cost = ex.stage2_cost(ex.RoomChromosome((("A",),)), TOY_ROOMS, [10])
        assert (cost.vacancies, cost.supervisors, cost.buildings) == (2, 1, 1)
        assert cost.total == 13

    def test_headcount_133_single_amphitheater(self, classrooms):
        cost = ex.stage2_cost(ex.RoomChromosome((("S1",),)), classrooms, [133])
        assert cost.total == 15

    def test_empty_session_is_free(self, classrooms):
        cost = ex.stage2_cost(ex.RoomChromosome(((), ("S1",))), classrooms, [0, 133])
        assert cost.sessions[0] == ex.SessionRoomCost(0, 0, 0)
        assert cost.total == 15

    def test_infeasible_chromosomes_raise(self, classrooms):
        cases = [
            (ex.RoomChromosome((("S5",),)), [133]),            # under capacity
            (ex.RoomChromosome((("S1", "S1"),)), [133]),       # in-session repeat
            (ex.RoomChromosome((("S99",),)), [133]),           # unknown id
            (ex.RoomChromosome((("S1",), ("S2",))), [133]),    # session count off
            (ex.RoomChromosome((("S1",),)), [0]),              # seats nobody
        ]
        for chrom, heads in cases:
            with pytest.raises(ex.InfeasibleRooms):
                ex.stage2_cost(chrom, classrooms, heads)

    def test_violation_list_is_precise(self, classrooms):
        chrom = ex.RoomChromosome((("S1", "S1"), ("S5",)))
        problems = " ".join(ex.room_violations(chrom, classrooms, [133, 427]))
        assert "session 0 lists a room more than once" in problems
        assert "session 1 seats 427 students in 15 places" in problems

    def test_cross_session_reuse_is_legal(self, classrooms):
        chrom = ex.RoomChromosome((("S1", "S2"), ("S1", "S2")))
        assert ex.room_violations(chrom, classrooms, [280, 280]) == []


class TestSelection:
    def test_objective_from_published_triples(self):
        for (vc, ts, db), f in zip(COST_TRIPLES, COST_F):
            assert ex.RoomCost((ex.SessionRoomCost(vc, ts, db),)).total == f
        assert sum(COST_F) == 2064

    def test_weights_from_published_objectives(self):
        assert ex.stage2_selection_weights(COST_F) == COST_WEIGHTS

    def test_weights_round_half_up_and_floor_at_one(self):
        assert ex.stage2_selection_weights([1, 3]) == [4, 1]
        assert ex.stage2_selection_weights([10]) == [1]
        with pytest.raises(ex.ZeroCost):
            ex.stage2_selection_weights([5, 0])

    def test_fitness_is_exact_reciprocal(self):
        cost = ex.RoomCost((ex.SessionRoomCost(2, 1, 1),))
        assert ex.stage2_fitness(cost) == Fraction(1, 13)
        with pytest.raises(ex.ZeroCost):
            ex.stage2_fitness(ex.RoomCost(()))


class TestHeadcounts:
    def test_department_pure_partition(self, gazi_index):
        chrom = ex.SessionChromosome((
            ("D14", "D16", "D18", "D19", "D17"),
            ("D7", "D15", "D5", "D12", "D6"),
            ("D11", "D8", "D13", "D9", "D10"),
            ("D4", "D2", "D1", "D3"),
        ))
        heads = ex.session_headcounts(chrom, gazi_index)
        assert [h.students for h in heads] == [162, 389, 133, 427]
        assert [h.session_index for h in heads] == [0, 1, 2, 3]


class TestSeeding:
    def test_seed_is_feasible_and_carries_no_surplus(self, classrooms):
        quota = {r.id: r.quota for r in classrooms}
        rng = random.Random(21)
        for _ in range(100):
            chrom = ex.seed_room_chromosome(classrooms, EXAMPLE_HEADS, rng)
            assert ex.room_violations(chrom, classrooms, EXAMPLE_HEADS) == []
            for rooms, need in zip(chrom.rooms_by_session, EXAMPLE_HEADS):
                # Drawing stopped at coverage: without its last pick the
                # session would be short.
                assert sum(quota[r] for r in rooms[:-1]) < need

    def test_zero_headcount_session_gets_no_rooms(self, classrooms):
        chrom = ex.seed_room_chromosome(classrooms, [0, 133], random.Random(0))
        assert chrom.rooms_by_session[0] == ()

    def test_unseatable_headcount_raises(self):
        with pytest.raises(ex.InfeasibleRooms):
            ex.seed_room_chromosome(TOY_ROOMS, [100], random.Random(0))


class TestOperators:
    def test_crossover_moves_whole_slots(self, classrooms):
        rng = random.Random(31)
        a = ex.seed_room_chromosome(classrooms, EXAMPLE_HEADS, rng)
        b = ex.seed_room_chromosome(classrooms, EXAMPLE_HEADS, rng)
        for _ in range(100):
            c1, c2 = ex.crossover_rooms(a, b, rng)
            for s in range(4):
                assert c1.rooms_by_session[s] in (a.rooms_by_session[s], b.rooms_by_session[s])
                assert c2.rooms_by_session[s] in (a.rooms_by_session[s], b.rooms_by_session[s])
                # The two children exchange, never clone, each slot.
                assert {c1.rooms_by_session[s], c2.rooms_by_session[s]} == {
                    a.rooms_by_session[s], b.rooms_by_session[s],
                }

    def test_crossover_session_count_mismatch(self):
        a = ex.RoomChromosome((("A",),))
        b = ex.RoomChromosome((("A",), ()))
        with pytest.raises(ValueError):
            ex.crossover_rooms(a, b, random.Random(0))

    def test_mutation_swaps_across_flat_positions(self):
        chrom = ex.RoomChromosome((("A", "B"), ("C",)))
        rng = random.Random(41)
        seen = set()
        for _ in range(200):
            mutant = ex.mutate_room_swap(chrom, rng)
            assert [len(s) for s in mutant.rooms_by_session] == [2, 1]
            assert sorted(r for s in mutant.rooms_by_session for r in s) == ["A", "B", "C"]
            seen.add(mutant.rooms_by_session)
        # Cross-session swaps occur: C reaches the first session.
        assert (("C", "B"), ("A",)) in seen
        assert (("A", "C"), ("B",)) in seen

    def test_mutation_below_two_genes_is_identity(self):
        chrom = ex.RoomChromosome((("A",), ()))
        assert ex.mutate_room_swap(chrom, random.Random(0)) is chrom


class TestRepair:
    def test_feasible_input_unchanged(self, classrooms):
        chrom = ex.RoomChromosome(EXAMPLE_ROOMS)
        assert ex.repair_room_chromosome(chrom, classrooms, EXAMPLE_HEADS, random.Random(0)) is chrom

    def test_duplicate_replaced_not_dropped(self, classrooms):
        chrom = ex.RoomChromosome((("S1", "S1", "S2", "S6"),))
        fixed = ex.repair_room_chromosome(chrom, classrooms, [427], random.Random(5))
        rooms = fixed.rooms_by_session[0]
        assert len(rooms) == len(set(rooms))
        assert len(rooms) >= 4  # replacement, then top-up if still short
        assert ex.room_violations(fixed, classrooms, [427]) == []

    def test_shortfall_topped_up_no_trimming(self, classrooms):
        # Wildly oversized session: repair must keep it (no trimming).
        big = tuple(r.id for r in classrooms[:10])
        chrom = ex.RoomChromosome((big, ("S5",)))
        fixed = ex.repair_room_chromosome(chrom, classrooms, [133, 427], random.Random(7))
        assert fixed.rooms_by_session[0] == big
        assert ex.room_violations(fixed, classrooms, [133, 427]) == []
        assert set(big) <= set(fixed.rooms_by_session[0])

    def test_zero_headcount_clears_rooms(self, classrooms):
        chrom = ex.RoomChromosome((("S1",), ("S2",)))
        fixed = ex.repair_room_chromosome(chrom, classrooms, [0, 427], random.Random(0))
        assert fixed.rooms_by_session[0] == ()

    def test_randomized_corruption_always_repaired(self, classrooms):
        ids = [r.id for r in classrooms]
        rng = random.Random(47)
        for _ in range(300):
            sessions = tuple(
                tuple(rng.choice(ids) for _ in range(rng.randint(0, 6)))
                for _ in range(4)
            )
            fixed = ex.repair_room_chromosome(
                ex.RoomChromosome(sessions), classrooms, EXAMPLE_HEADS, rng
            )
            assert ex.room_violations(fixed, classrooms, EXAMPLE_HEADS) == []

    def test_impossible_coverage_raises(self):
        chrom = ex.RoomChromosome((("A",),))
        with pytest.raises(ex.InfeasibleRooms):
            ex.repair_room_chromosome(chrom, TOY_ROOMS, [100], random.Random(0))


class TestEvolveRooms:
    def params(self, seed=0, **overrides):
        base = dict(max_session_minutes=150, seed=seed)
        base.update(overrides)
        return ex.SchedulingParams(**base)

    def test_toy_single_room_optimum(self):
        result = ex.evolve_rooms(TOY_ROOMS, [10], self.params(seed=3))
        assert -result.best_raw_score == 13
        assert result.best_individual.rooms_by_session == (("A",),)

    def test_same_seed_reproduces_everything(self, classrooms):
        a = ex.evolve_rooms(classrooms, EXAMPLE_HEADS, self.params(seed=9))
        b = ex.evolve_rooms(classrooms, EXAMPLE_HEADS, self.params(seed=9))
        assert a == b

    def test_history_never_decreases(self, classrooms):
        result = ex.evolve_rooms(classrooms, EXAMPLE_HEADS, self.params(seed=13))
        assert all(x <= y for x, y in zip(result.history, result.history[1:]))

    def test_all_zero_headcounts_rejected(self, classrooms):
        with pytest.raises(ex.ZeroCost):
            ex.evolve_rooms(classrooms, [0, 0], self.params())

    def test_negative_headcount_rejected(self, classrooms):
        with pytest.raises(ValueError):
            ex.evolve_rooms(classrooms, [-1, 10], self.params())
