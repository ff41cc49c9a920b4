"""Unit tests for the optimizer's constituent operations and the run loop."""

import math
import random

import pytest

from plantprop.benchmarks import Bounds, make_function
from plantprop.core import (
    Individual,
    PpaConfig,
    SteepeningSchedule,
    fitness,
    mutate,
    normalize,
    offspring_count,
    run_ppa,
    select_survivors,
    steepness,
)

# frozen from a 50-digit arbitrary-precision tanh evaluation
FITNESS_Z1_S1 = 0.98201379003790845
FITNESS_Z025_S2 = 0.017986209962091558
FITNESS_Z075_S3 = 0.9975273768433652


class ScriptedRng:
    """Feeds mutate() a fixed uniform sequence."""

    def __init__(self, values):
        self._values = list(values)

    def next_uniform(self):
        return self._values.pop(0)


# -- normalize ---------------------------------------------------------------


def test_normalize_basic():
    assert normalize([3.0, 1.0, 5.0]) == [0.5, 1.0, 0.0]


def test_normalize_degenerate_population():
    assert normalize([7.0, 7.0, 7.0]) == [0.5, 0.5, 0.5]


def test_normalize_two_points():
    assert normalize([0.0, 10.0]) == [1.0, 0.0]


def test_normalize_rejects_empty_and_non_finite():
    with pytest.raises(ValueError):
        normalize([])
    with pytest.raises(ValueError):
        normalize([1.0, math.inf])
    with pytest.raises(ValueError):
        normalize([math.nan])


def test_normalize_range_exact_on_random_vectors():
    rnd = random.Random(5)
    for _ in range(200):
        values = [rnd.uniform(-1e6, 1e6) for _ in range(rnd.randint(2, 40))]
        if max(values) == min(values):
            continue
        z = normalize(values)
        assert min(z) == 0.0
        assert max(z) == 1.0
        assert z[values.index(min(values))] == 1.0


# -- steepness ---------------------------------------------------------------


def test_steepness_examples():
    linear = SteepeningSchedule.linear(1000.0)
    assert steepness(0, linear) == 1.0
    assert steepness(4000, linear) == 5.0
    assert steepness(10**9, SteepeningSchedule.vanilla()) == 1.0


def test_steepness_rejects_negative_evals():
    with pytest.raises(ValueError):
        steepness(-1, SteepeningSchedule.vanilla())


def test_schedule_validation():
    with pytest.raises(ValueError):
        SteepeningSchedule("linear", 0.0)
    with pytest.raises(ValueError):
        SteepeningSchedule("cosine", 5.0)


# -- fitness -----------------------------------------------------------------


def test_fitness_midpoint_is_half_for_any_steepness():
    for s in (1.0, 2.0, 5.0, 41.0, 101.0, 1e6):
        assert fitness(0.5, s) == 0.5


def test_fitness_frozen_values():
    assert fitness(1.0, 1.0) == pytest.approx(FITNESS_Z1_S1, abs=1e-12)
    assert fitness(0.25, 2.0) == pytest.approx(FITNESS_Z025_S2, abs=1e-12)
    assert fitness(0.75, 3.0) == pytest.approx(FITNESS_Z075_S3, abs=1e-12)


def test_fitness_saturates_toward_one():
    # tanh(20) rounds to 1.0 in double precision; saturation is the
    # intended step-function limit
    assert fitness(1.0, 10.0) == pytest.approx(1.0, abs=1e-12)


def test_fitness_monotone_in_z():
    zs = [i / 50 for i in range(51)]
    for s in (1.0, 2.0, 4.0):
        values = [fitness(z, s) for z in zs]
        assert all(a < b for a, b in zip(values, values[1:])), s
    # past s~10 the tails saturate to exactly 0.0/1.0 in doubles, so
    # only non-strict ordering survives
    values = [fitness(z, 10.0) for z in zs]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[0] == 0.0 and values[-1] == 1.0


def test_fitness_steepening_approaches_step():
    for z in (0.1, 0.3, 0.49, 0.51, 0.8, 0.97):
        target = 0.0 if z < 0.5 else 1.0
        gaps = [abs(fitness(z, s) - target) for s in (1.0, 2.0, 4.0, 8.0, 16.0)]
        assert all(a > b for a, b in zip(gaps, gaps[1:])), z


def test_fitness_vanilla_equivalence_of_huge_factor():
    schedule = SteepeningSchedule.linear(1e12)
    for evals in (0, 123, 10_000):
        s = steepness(evals, schedule)
        for z in (0.0, 0.2, 0.5, 0.8, 1.0):
            assert abs(fitness(z, s) - fitness(z, 1.0)) < 1e-6


# -- offspring_count ---------------------------------------------------------


def test_offspring_count_examples():
    assert offspring_count(0.999999, 0.999, 5) == 5
    assert offspring_count(0.2, 0.5, 5) == 1


def test_offspring_count_floor_overrides_raw_formula():
    # the raw ceiling formula yields zero children at r=0
    assert math.ceil(5 * 0.5 * 0.0) == 0
    assert offspring_count(0.5, 0.0, 5) == 1


def test_offspring_count_stays_in_range():
    rnd = random.Random(17)
    for _ in range(500):
        n_max = rnd.randint(1, 12)
        count = offspring_count(rnd.random(), rnd.random(), n_max)
        assert 1 <= count <= n_max


# -- mutate ------------------------------------------------------------------


def test_mutate_identity_at_full_fitness():
    bounds = Bounds((-3.0, -3.0), (3.0, 3.0))
    parent = Individual((1.25, -0.5), 0.0)
    rng = ScriptedRng([0.123, 0.987])
    assert mutate(parent, 1.0, bounds, rng) == parent.position


def test_mutate_clamps_to_upper_bound():
    bounds = Bounds((0.0,), (10.0,))
    parent = Individual((5.0,), 0.0)
    # F=0 and r near 1: raw step 5 + 10*2*(r-0.5) lands near 15
    rng = ScriptedRng([1.0 - 1e-9])
    assert mutate(parent, 0.0, bounds, rng) == (10.0,)


def test_mutate_clamps_to_lower_bound():
    bounds = Bounds((0.0,), (10.0,))
    parent = Individual((5.0,), 0.0)
    rng = ScriptedRng([0.0])
    assert mutate(parent, 0.0, bounds, rng) == (0.0,)


def test_mutate_direct_arithmetic():
    # perturbation = (b-a) * 2(r-0.5)(1-F); width 1, r=0.75, F=0.5 -> 0.25
    bounds = Bounds((-0.5, -0.5), (0.5, 0.5))
    parent = Individual((0.0, 0.0), 0.0)
    rng = ScriptedRng([0.75, 0.75])
    assert mutate(parent, 0.5, bounds, rng) == (0.25, 0.25)
    # doubling the bound width doubles the step: [-1,1] gives 0.5
    bounds = Bounds((-1.0, -1.0), (1.0, 1.0))
    rng = ScriptedRng([0.75, 0.75])
    assert mutate(parent, 0.5, bounds, rng) == (0.5, 0.5)


def test_mutate_draws_one_uniform_per_dimension():
    bounds = Bounds((0.0,) * 4, (1.0,) * 4)
    parent = Individual((0.5,) * 4, 0.0)
    rng = ScriptedRng([0.5, 0.25, 0.75, 0.5])
    got = mutate(parent, 0.5, bounds, rng)
    assert got == (0.5, 0.25, 0.75, 0.5)
    assert rng._values == []


def test_mutate_stays_in_bounds_randomized():
    rnd = random.Random(23)
    for _ in range(300):
        dim = rnd.randint(1, 6)
        lower = tuple(rnd.uniform(-5, 0) for _ in range(dim))
        upper = tuple(l + rnd.uniform(0.5, 5) for l in lower)
        bounds = Bounds(lower, upper)
        parent = Individual(
            tuple(rnd.uniform(a, b) for a, b in zip(lower, upper)), 0.0
        )
        rng = ScriptedRng([rnd.random() for _ in range(dim)])
        child = mutate(parent, rnd.random(), bounds, rng)
        assert bounds.contains(child)


# -- select_survivors --------------------------------------------------------


def _pop(values):
    return [Individual((float(i),), v) for i, v in enumerate(values)]


def test_select_takes_best_of_union():
    parents = _pop([1.0, 2.0, 3.0])
    offspring = _pop([0.0, 4.0])
    got = select_survivors(parents, offspring, 3)
    assert [ind.objective for ind in got] == [0.0, 1.0, 2.0]


def test_select_identity_without_offspring():
    parents = _pop([4.0, 2.0, 9.0])
    assert select_survivors(parents, [], 3) == sorted(
        parents, key=lambda i: i.objective
    )


def test_select_ties_prefer_parents_then_insertion_order():
    parents = [Individual((1.0,), 5.0), Individual((2.0,), 5.0)]
    offspring = [Individual((3.0,), 5.0)]
    got = select_survivors(parents, offspring, 2)
    assert got == parents


def test_select_rejects_undersized_pool():
    with pytest.raises(ValueError):
        select_survivors(_pop([1.0]), [], 2)


# -- run_ppa -----------------------------------------------------------------


def test_run_budget_equals_popsize_is_init_only():
    fn = make_function("sphere", 2)
    config = PpaConfig(budget=30, pop_size=30)
    result = run_ppa(config, fn, seed=7)
    assert result.evaluations_used == 30
    assert result.trajectory[-1][0] == 30
    assert result.best_value == min(v for _, v in result.trajectory)


def test_run_is_deterministic():
    fn = make_function("rastrigin", 2)
    config = PpaConfig(budget=500, schedule=SteepeningSchedule.linear(900.0))
    a = run_ppa(config, fn, seed=123)
    b = run_ppa(config, fn, seed=123)
    assert a == b


def test_run_sphere_descends_below_tolerance():
    fn = make_function("sphere", 2)
    config = PpaConfig(budget=10_000, pop_size=30, n_max=5)
    for seed in (1, 2, 3):
        result = run_ppa(config, fn, seed=seed)
        assert result.best_value < 1e-2, seed


def test_run_trajectory_is_monotone_and_budget_exact():
    fn = make_function("ackley", 2)
    config = PpaConfig(budget=777, schedule=SteepeningSchedule.linear(300.0))
    result = run_ppa(config, fn, seed=99)
    assert result.evaluations_used == 777
    indices = [i for i, _ in result.trajectory]
    values = [v for _, v in result.trajectory]
    assert indices == sorted(indices)
    assert all(a >= b for a, b in zip(values, values[1:]))
    assert result.trajectory[-1][0] == 777
    assert result.best_value == values[-1]


def test_run_observer_sees_constant_population_in_bounds():
    fn = make_function("griewank", 2)
    config = PpaConfig(budget=400, pop_size=20)
    seen = []

    def observer(evals, population):
        seen.append(evals)
        assert len(population) == 20
        for ind in population:
            assert fn.bounds.contains(ind.position)

    run_ppa(config, fn, seed=5, observer=observer)
    assert seen
    assert seen[-1] == 400


def test_run_propagates_objective_errors():
    fn = make_function("sphere", 2)
    bad = type(fn)(
        name="bad",
        dimension=2,
        bounds=fn.bounds,
        known_optimum_value=0.0,
        known_optimum_points=((0.0, 0.0),),
        _fn=lambda x: math.nan,
    )
    config = PpaConfig(budget=100)
    with pytest.raises(ValueError):
        run_ppa(config, bad, seed=1)


def test_config_validation():
    with pytest.raises(ValueError):
        PpaConfig(budget=10, pop_size=30)
    with pytest.raises(ValueError):
        PpaConfig(budget=100, pop_size=0)
    with pytest.raises(ValueError):
        PpaConfig(budget=100, n_max=0)
