"""Plant propagation generational loop and its constituent operations.

The optimizer keeps a fixed-size population. Each generation the objective
values are normalized to [0, 1] (best -> 1), pushed through a tanh sigmoid
to get fitness, and every individual spawns offspring: fit individuals many
offspring with small mutations, unfit ones few offspring with large
mutations. The sigmoid's steepness can stay fixed at 1 ("vanilla") or grow
linearly with the number of completed objective evaluations, which
gradually sharpens the transform toward a step function.

Everything here is scalar double arithmetic with a fixed draw order; the
compiled engine in ``_kernel`` replicates it bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .benchmarks import BenchmarkFunction, Bounds
from .rng import Xoshiro256pp


@dataclass(frozen=True)
class SteepeningSchedule:
    """Steepness control: constant 1 (vanilla) or s = evals/factor + 1."""

    mode: str
    factor: float = math.inf

    def __post_init__(self):
        if self.mode not in ("vanilla", "linear"):
            raise ValueError(f"unknown schedule mode {self.mode!r}")
        if self.mode == "linear" and not self.factor > 0:
            raise ValueError("linear schedule requires factor > 0")

    @classmethod
    def vanilla(cls) -> "SteepeningSchedule":
        return cls("vanilla")

    @classmethod
    def linear(cls, factor: float) -> "SteepeningSchedule":
        return cls("linear", float(factor))


def steepness(evals: int, schedule: SteepeningSchedule) -> float:
    """Sigmoid steepness after `evals` completed objective evaluations."""
    if evals < 0:
        raise ValueError("evaluation count must be non-negative")
    if schedule.mode == "vanilla":
        return 1.0
    return evals / schedule.factor + 1.0


@dataclass(frozen=True)
class PpaConfig:
    """Run parameters: population size, offspring cap, budget, schedule."""

    budget: int
    pop_size: int = 30
    n_max: int = 5
    schedule: SteepeningSchedule = field(default_factory=SteepeningSchedule.vanilla)

    def __post_init__(self):
        if self.pop_size < 1:
            raise ValueError("pop_size must be >= 1")
        if self.n_max < 1:
            raise ValueError("n_max must be >= 1")
        if self.budget < self.pop_size:
            raise ValueError("budget must cover at least the initial population")


@dataclass(frozen=True)
class Individual:
    """A point in the search box with its cached objective value."""

    position: tuple[float, ...]
    objective: float


@dataclass(frozen=True)
class RunResult:
    best_value: float
    best_point: tuple[float, ...]
    trajectory: tuple[tuple[int, float], ...]  # (evaluation index, best so far)
    evaluations_used: int
    seed: int


def normalize(objectives: Sequence[float]) -> list[float]:
    """Map objective values to [0, 1]: lowest -> 1, highest -> 0.

    A degenerate population (all values equal) maps to 0.5 everywhere,
    which keeps the downstream sigmoid at its midpoint instead of dividing
    by zero.
    """
    if len(objectives) == 0:
        raise ValueError("cannot normalize an empty objective vector")
    for f in objectives:
        if not math.isfinite(f):
            raise ValueError(f"objective produced a non-finite value: {f}")
    fmin = min(objectives)
    fmax = max(objectives)
    if fmax == fmin:
        return [0.5] * len(objectives)
    span = fmax - fmin
    return [(fmax - f) / span for f in objectives]


def fitness(z: float, s: float) -> float:
    """Sigmoid fitness 0.5*(tanh(4*s*z - 2*s) + 1), increasing in z.

    At z = 0.5 the value is exactly 0.5 for any steepness; as s grows the
    curve approaches a 0/1 step around that midpoint (and saturates to
    exactly 0.0/1.0 in double precision once |4sz - 2s| is large enough,
    which is the intended limit).
    """
    return 0.5 * (math.tanh(4.0 * s * z - 2.0 * s) + 1.0)


def offspring_count(f: float, r: float, n_max: int) -> int:
    """Number of offspring: ceil(n_max * f * r), floored at 1.

    The raw product can round down to zero (r = 0 or a fully unfit parent);
    the floor guarantees every survivor reproduces. The count never exceeds
    n_max since f <= 1 and r < 1.
    """
    n = int(math.ceil(n_max * f * r))
    if n < 1:
        return 1
    if n > n_max:
        return n_max
    return n


def mutate(
    parent: Individual,
    f: float,
    bounds: Bounds,
    rng: Xoshiro256pp,
) -> tuple[float, ...]:
    """Perturb every coordinate of the parent, clamping to the bounds.

    Dimension j moves by (b_j - a_j) * 2*(r - 0.5)*(1 - f) with a fresh
    uniform r per dimension, so fit parents (f near 1) step tiny distances
    and unfit ones roam the whole box. f = 1 reproduces the parent exactly.
    """
    lower = bounds.lower
    upper = bounds.upper
    position = parent.position
    out = []
    for j in range(len(position)):
        r = rng.next_uniform()
        d = 2.0 * (r - 0.5) * (1.0 - f)
        xj = position[j] + (upper[j] - lower[j]) * d
        if xj < lower[j]:
            xj = lower[j]
        elif xj > upper[j]:
            xj = upper[j]
        out.append(xj)
    return tuple(out)


def select_survivors(
    parents: Sequence[Individual],
    offspring: Sequence[Individual],
    pop_size: int,
) -> list[Individual]:
    """Keep the pop_size lowest-objective individuals from parents+offspring.

    Ties break toward earlier creation (parents before offspring, then
    insertion order), which makes selection fully deterministic.
    """
    pool = list(parents) + list(offspring)
    if len(pool) < pop_size:
        raise ValueError(
            f"selection pool of {len(pool)} cannot fill a population of {pop_size}"
        )
    order = sorted(range(len(pool)), key=lambda i: (pool[i].objective, i))
    return [pool[i] for i in order[:pop_size]]


def run_ppa(
    config: PpaConfig,
    objective: BenchmarkFunction,
    seed: int,
    observer: Callable[[int, list[Individual]], None] | None = None,
) -> RunResult:
    """Run the optimizer until the evaluation budget is exhausted.

    The loop: uniform initialization inside the bounds; then per generation
    compute the steepness from the completed-evaluation counter, normalize,
    assign fitness, let each parent produce offspring (stopping the moment
    the budget is hit, even mid-generation), and select survivors from the
    union of parents and offspring. Identical (config, objective, seed)
    inputs give identical results.

    `observer`, when given, is called after every selection with
    (evaluations_used, population); it exists for invariant checks and is
    not part of the hot path.
    """
    bounds = objective.bounds
    if len(bounds) != objective.dimension:
        raise ValueError("objective bounds do not match its dimension")
    lower = bounds.lower
    upper = bounds.upper
    dim = objective.dimension
    pop_size = config.pop_size
    n_max = config.n_max
    budget = config.budget

    rng = Xoshiro256pp.from_seed(seed)

    best_value = math.inf
    best_point: tuple[float, ...] = ()
    trajectory: list[tuple[int, float]] = []
    evals = 0

    population: list[Individual] = []
    for _ in range(pop_size):
        coords = []
        for j in range(dim):
            u = rng.next_uniform()
            coords.append(lower[j] + u * (upper[j] - lower[j]))
        position = tuple(coords)
        value = objective.evaluate(position)
        evals += 1
        if value < best_value:
            best_value = value
            best_point = position
            trajectory.append((evals, value))
        population.append(Individual(position, value))

    while evals < budget:
        s = steepness(evals, config.schedule)
        z = normalize([ind.objective for ind in population])
        fits = [fitness(zi, s) for zi in z]

        offspring: list[Individual] = []
        for i, parent in enumerate(population):
            if evals >= budget:
                break
            r = rng.next_uniform()
            count = offspring_count(fits[i], r, n_max)
            for _ in range(count):
                if evals >= budget:
                    break
                position = mutate(parent, fits[i], bounds, rng)
                value = objective.evaluate(position)
                evals += 1
                if value < best_value:
                    best_value = value
                    best_point = position
                    trajectory.append((evals, value))
                offspring.append(Individual(position, value))

        population = select_survivors(population, offspring, pop_size)
        if observer is not None:
            observer(evals, population)

    if not trajectory or trajectory[-1][0] != evals:
        trajectory.append((evals, best_value))

    return RunResult(
        best_value=best_value,
        best_point=best_point,
        trajectory=tuple(trajectory),
        evaluations_used=evals,
        seed=seed,
    )
