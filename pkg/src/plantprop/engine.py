"""Backend selection: compiled kernel when available, pure Python otherwise.

Both backends produce bit-identical results for the built-in benchmark
functions (same RNG stream, same double arithmetic); the compiled one is
just faster. Custom objective callables and observers always go through
the Python engine.
"""

from __future__ import annotations

from typing import Callable

from . import core
from .benchmarks import FUNCTION_IDS, BenchmarkFunction
from .core import PpaConfig, RunResult
from .rng import MASK64

try:
    from . import _kernel
except ImportError:  # pragma: no cover - depends on the build environment
    _kernel = None

HAVE_KERNEL = _kernel is not None
DEFAULT_BACKEND = "compiled" if HAVE_KERNEL else "python"
BACKENDS = ("auto", "compiled", "python")


def _can_compile(function: BenchmarkFunction) -> bool:
    return HAVE_KERNEL and FUNCTION_IDS.get(function.name) is not None


def run(
    config: PpaConfig,
    function: BenchmarkFunction,
    seed: int,
    backend: str = "auto",
    observer: Callable | None = None,
) -> RunResult:
    """Run one optimization with an explicit or automatically chosen backend.

    `auto` picks the compiled kernel when it was built, the function is one
    of the registered benchmarks, and no observer is attached; otherwise it
    falls back to the Python engine. Requesting `compiled` in a situation
    the kernel cannot handle is an error rather than a silent fallback.
    """
    if backend not in BACKENDS:
        raise ValueError(
            f"unknown backend {backend!r}; expected one of {', '.join(BACKENDS)}"
        )
    if backend == "auto":
        backend = (
            "compiled" if (_can_compile(function) and observer is None) else "python"
        )
    if backend == "python":
        return core.run_ppa(config, function, seed, observer=observer)

    if not HAVE_KERNEL:
        raise RuntimeError(
            "the compiled backend is unavailable (extension not built); "
            "use backend='python' or 'auto'"
        )
    if observer is not None:
        raise ValueError("the compiled backend does not support observers")
    func_id = FUNCTION_IDS.get(function.name)
    if func_id is None:
        raise ValueError(
            f"the compiled backend only handles registered benchmark "
            f"functions, not {function.name!r}"
        )

    linear = config.schedule.mode == "linear"
    best, best_point, trajectory, evals = _kernel.run(
        func_id,
        function.dimension,
        list(function.bounds.lower),
        list(function.bounds.upper),
        config.pop_size,
        config.n_max,
        config.budget,
        linear,
        config.schedule.factor if linear else 1.0,
        seed & MASK64,
    )
    return RunResult(
        best_value=best,
        best_point=tuple(best_point),
        trajectory=tuple((int(i), float(v)) for i, v in trajectory),
        evaluations_used=evals,
        seed=seed,
    )
