"""Generational genetic-algorithm engine with elitism and roulette selection.

The engine is stage-agnostic: a :class:`GaProblem` supplies seeding, scoring,
selection weighting and the three operators, and :func:`run_ga` drives the
loop.  Higher raw score is always better; minimizing stages negate their cost.

Determinism contract: one ``random.Random`` stream, seeded from
``params.seed``, drives an entire run.  Draws happen in a fixed order: first
seeding (one call per individual), then per generation and per offspring pair:
two parent draws, the crossover decision (plus any draws inside the crossover
operator), then for each of the two children a mutation decision (plus draws
inside mutate) followed by draws inside repair.  Scoring and selection-weight
computation are pure and never touch the stream, so evaluation order cannot
change a run's outcome.
"""

from __future__ import annotations

import logging
import random
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Callable, Sequence

from .model import SchedulingParams

log = logging.getLogger(__name__)


class SeedingFailed(RuntimeError):
    """No feasible individual could be produced within the retry budget."""


class AllZeroWeights(ValueError):
    """Every selection weight is zero, so the wheel has no sectors."""


class RepairFailed(RuntimeError):
    """Repair could not restore feasibility within its move budget."""


class GaProblem(ABC):
    """One optimization stage, as seen by the engine.

    ``raw_score``, ``fitness`` and ``selection_weights`` must be pure;
    operators receive the shared stream and must draw nothing outside it.
    """

    @abstractmethod
    def seed_individual(self, rng: random.Random) -> Any: ...

    @abstractmethod
    def raw_score(self, individual: Any) -> int: ...

    @abstractmethod
    def fitness(self, raw_scores: Sequence[int]) -> list[int]: ...

    @abstractmethod
    def selection_weights(self, fitness: Sequence[int]) -> list[int]: ...

    @abstractmethod
    def crossover(self, a: Any, b: Any, rng: random.Random) -> tuple[Any, Any]: ...

    @abstractmethod
    def mutate(self, individual: Any, rng: random.Random) -> Any: ...

    @abstractmethod
    def repair(self, individual: Any, rng: random.Random) -> Any: ...

    @abstractmethod
    def is_feasible(self, individual: Any) -> bool: ...


@dataclass(frozen=True)
class GaRunResult:
    best_individual: Any
    best_raw_score: int
    generations_run: int
    history: tuple[int, ...]


def roulette_select(weights: Sequence[int], rng: random.Random) -> int:
    """Draw an index proportionally to non-negative integer weights."""
    total = sum(weights)
    if total <= 0:
        raise AllZeroWeights("selection weights sum to zero")
    pick = rng.randrange(total)
    acc = 0
    for i, w in enumerate(weights):
        acc += w
        if pick < acc:
            return i
    raise AssertionError("unreachable: weights changed during iteration")


def should_terminate(history: Sequence[int], params: SchedulingParams) -> bool:
    """True once the generation budget is spent or the best score stalls.

    ``history`` holds the best raw score of each completed generation; with
    elitism it never decreases, so "no improvement over the last
    ``stagnation_limit`` entries" reduces to comparing the window's ends.
    """
    if len(history) >= params.max_generations:
        return True
    k = params.stagnation_limit
    return len(history) >= k and history[-1] <= history[-k]


def _seed_population(problem: GaProblem, params: SchedulingParams, rng: random.Random) -> list:
    population: list = []
    rejected = 0
    while len(population) < params.population_size:
        individual = problem.seed_individual(rng)
        if problem.is_feasible(individual):
            population.append(individual)
        else:
            rejected += 1
            if rejected >= params.seeding_retries:
                raise SeedingFailed(f"{rejected} infeasible seeds in a row")
    return population


def run_ga(
    problem: GaProblem,
    params: SchedulingParams,
    on_generation: Callable[[int, list, list[int]], None] | None = None,
) -> GaRunResult:
    """Evolve a population until termination and return the best individual.

    Each generation copies the ``elite_count`` best unchanged (ties broken by
    lower index), then fills the remainder with offspring: two roulette-drawn
    parents, crossover with probability ``crossover_rate`` (otherwise the pair
    is cloned), per-child mutation with probability ``mutation_rate``, and
    unconditional repair.  A child whose repair fails is replaced by its
    parent.  When every selection weight is zero the parent draw falls back to
    uniform.  ``on_generation(generation, population, raw_scores)`` is invoked
    after each generation.
    """
    params.validate()
    rng = random.Random(params.seed)
    size = params.population_size
    population = _seed_population(problem, params, rng)
    raws = [problem.raw_score(ind) for ind in population]
    history: list[int] = []

    while not should_terminate(history, params):
        order = sorted(range(size), key=lambda i: (-raws[i], i))
        elite_idx = order[: params.elite_count]
        elites = [population[i] for i in elite_idx]
        elite_raws = [raws[i] for i in elite_idx]

        fits = problem.fitness(list(raws))
        weights: list[int] = []
        if sum(fits) > 0:
            weights = problem.selection_weights(fits)
        uniform = sum(weights) <= 0

        needed = size - params.elite_count
        children: list = []
        while len(children) < needed:
            if uniform:
                i = rng.randrange(size)
                j = rng.randrange(size)
            else:
                i = roulette_select(weights, rng)
                j = roulette_select(weights, rng)
            if rng.random() < params.crossover_rate:
                child_a, child_b = problem.crossover(population[i], population[j], rng)
            else:
                child_a, child_b = population[i], population[j]
            for child, parent in ((child_a, population[i]), (child_b, population[j])):
                if rng.random() < params.mutation_rate:
                    child = problem.mutate(child, rng)
                try:
                    child = problem.repair(child, rng)
                except RepairFailed:
                    child = parent
                children.append(child)
        del children[needed:]  # an odd slot count drops the last pair's second child

        population = elites + children
        raws = elite_raws + [problem.raw_score(c) for c in children]
        history.append(max(raws))
        log.debug("generation %d best %d", len(history), history[-1])
        if on_generation is not None:
            on_generation(len(history), population, raws)

    best = min(range(size), key=lambda i: (-raws[i], i))
    return GaRunResult(population[best], raws[best], len(history), tuple(history))
