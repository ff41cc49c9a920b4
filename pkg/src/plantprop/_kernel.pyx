# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled engine: xoshiro256++ stream, objective dispatch, run loop.

This module mirrors rng.py, benchmarks.py and core.py operation for
operation (same draw order, same IEEE double expression shapes, same libm
calls), so a run here is bit-identical to the pure-Python engine. Keep the
four files in lockstep when touching any formula.

Compiled without -ffast-math on purpose; IEEE semantics are part of the
contract.
"""

from libc.math cimport ceil, cos, exp, fabs, isfinite, pow, sin, sqrt, tanh, INFINITY
from libc.stdint cimport uint64_t
from libc.stdlib cimport free, malloc, qsort

# exact doubles of math.pi / math.e
cdef double PI = 3.141592653589793
cdef double E = 2.718281828459045
cdef double TWO_PI = 2.0 * 3.141592653589793

cdef double BRANIN_B = 5.1 / (4.0 * 3.141592653589793 * 3.141592653589793)
cdef double BRANIN_C = 5.0 / 3.141592653589793
cdef double BRANIN_T = 1.0 / (8.0 * 3.141592653589793)

# 2^-53, exact
cdef double INV_2_53 = 1.0 / 9007199254740992.0

cdef uint64_t GAMMA = 0x9E3779B97F4A7C15
cdef uint64_t MIX_M1 = 0xBF58476D1CE4E5B9
cdef uint64_t MIX_M2 = 0x94D049BB133111EB

NUM_FUNCTIONS = 14  # ids follow benchmarks.FUNCTION_NAMES order


cdef struct Rng:
    uint64_t s0
    uint64_t s1
    uint64_t s2
    uint64_t s3


cdef inline uint64_t _rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline uint64_t _mix64(uint64_t z) noexcept nogil:
    z = (z ^ (z >> 30)) * MIX_M1
    z = (z ^ (z >> 27)) * MIX_M2
    return z ^ (z >> 31)


cdef void _rng_seed(Rng* r, uint64_t seed) noexcept nogil:
    cdef uint64_t state = seed
    state += GAMMA
    r.s0 = _mix64(state)
    state += GAMMA
    r.s1 = _mix64(state)
    state += GAMMA
    r.s2 = _mix64(state)
    state += GAMMA
    r.s3 = _mix64(state)


cdef inline uint64_t _rng_u64(Rng* r) noexcept nogil:
    cdef uint64_t s0 = r.s0
    cdef uint64_t s1 = r.s1
    cdef uint64_t s2 = r.s2
    cdef uint64_t s3 = r.s3
    cdef uint64_t result = _rotl(s0 + s3, 23) + s0
    cdef uint64_t t = s1 << 17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, 45)
    r.s0 = s0
    r.s1 = s1
    r.s2 = s2
    r.s3 = s3
    return result


cdef inline double _rng_uniform(Rng* r) noexcept nogil:
    return <double>(_rng_u64(r) >> 11) * INV_2_53


cdef double _eval(int fid, int n, double* x) noexcept nogil:
    cdef double s = 0.0
    cdef double s2 = 0.0
    cdef double p = 1.0
    cdef double x1, x2, a, b, t, t1, t2, u, v, d1, d2, xi
    cdef int i
    if fid == 0:  # sphere
        for i in range(n):
            s += x[i] * x[i]
        return s
    elif fid == 1:  # cigar
        for i in range(1, n):
            s += x[i] * x[i]
        return x[0] * x[0] + 1.0e6 * s
    elif fid == 2:  # ellipse
        for i in range(n):
            s += pow(10.0, 6.0 * i / (n - 1)) * (x[i] * x[i])
        return s
    elif fid == 3:  # tablet
        for i in range(1, n):
            s += x[i] * x[i]
        return 1.0e6 * (x[0] * x[0]) + s
    elif fid == 4:  # griewank
        for i in range(n):
            xi = x[i]
            s += xi * xi
            p *= cos(xi / sqrt(i + 1.0))
        return s / 4000.0 - p + 1.0
    elif fid == 5:  # rosenbrock
        for i in range(n - 1):
            t1 = x[i + 1] - x[i] * x[i]
            t2 = 1.0 - x[i]
            s += 100.0 * (t1 * t1) + t2 * t2
        return s
    elif fid == 6:  # ackley
        for i in range(n):
            xi = x[i]
            s += xi * xi
            s2 += cos(TWO_PI * xi)
        return -20.0 * exp(-0.2 * sqrt(s / n)) - exp(s2 / n) + 20.0 + E
    elif fid == 7:  # rastrigin
        for i in range(n):
            xi = x[i]
            s += xi * xi - 10.0 * cos(TWO_PI * xi)
        return 10.0 * n + s
    elif fid == 8:  # schwefel
        for i in range(n):
            xi = x[i]
            s += xi * sin(sqrt(fabs(xi)))
        return 418.9829 * n - s
    elif fid == 9:  # easom
        d1 = x[0] - PI
        d2 = x[1] - PI
        return -cos(x[0]) * cos(x[1]) * exp(-(d1 * d1 + d2 * d2))
    elif fid == 10:  # sixhumpcamel
        x1 = x[0]
        x2 = x[1]
        a = x1 * x1
        b = x2 * x2
        return (4.0 - 2.1 * a + a * a / 3.0) * a + x1 * x2 + (-4.0 + 4.0 * b) * b
    elif fid == 11:  # branin
        x1 = x[0]
        x2 = x[1]
        t = x2 - BRANIN_B * (x1 * x1) + BRANIN_C * x1 - 6.0
        return t * t + 10.0 * (1.0 - BRANIN_T) * cos(x1) + 10.0
    elif fid == 12:  # goldsteinprice
        x1 = x[0]
        x2 = x[1]
        u = x1 + x2 + 1.0
        a = 19.0 - 14.0 * x1 + 3.0 * (x1 * x1) - 14.0 * x2 + 6.0 * (x1 * x2) + 3.0 * (x2 * x2)
        v = 2.0 * x1 - 3.0 * x2
        b = 18.0 - 32.0 * x1 + 12.0 * (x1 * x1) + 48.0 * x2 - 36.0 * (x1 * x2) + 27.0 * (x2 * x2)
        return (1.0 + (u * u) * a) * (30.0 + (v * v) * b)
    else:  # martingaddy (fid == 13)
        t1 = x[0] - x[1]
        t2 = (x[0] + x[1] - 10.0) / 3.0
        return t1 * t1 + t2 * t2


cdef struct SortItem:
    double obj
    int idx


cdef int _cmp_item(const void* pa, const void* pb) noexcept nogil:
    cdef const SortItem* a = <const SortItem*>pa
    cdef const SortItem* b = <const SortItem*>pb
    if a.obj < b.obj:
        return -1
    if a.obj > b.obj:
        return 1
    if a.idx < b.idx:
        return -1
    if a.idx > b.idx:
        return 1
    return 0


def rng_u64_stream(seed, int n):
    """First n raw 64-bit outputs for a seed (parity/golden-vector tests)."""
    cdef Rng rng
    _rng_seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    return [_rng_u64(&rng) for _ in range(n)]


def rng_uniform_stream(seed, int n):
    """First n uniform doubles in [0, 1) for a seed."""
    cdef Rng rng
    _rng_seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))
    return [_rng_uniform(&rng) for _ in range(n)]


def eval_function(int func_id, x):
    """Evaluate benchmark `func_id` at point x (parity tests)."""
    cdef int n = len(x)
    cdef int j
    if func_id < 0 or func_id >= NUM_FUNCTIONS:
        raise ValueError(f"unknown function id {func_id}")
    cdef double* buf = <double*>malloc(n * sizeof(double))
    if buf == NULL:
        raise MemoryError()
    try:
        for j in range(n):
            buf[j] = x[j]
        return _eval(func_id, n, buf)
    finally:
        free(buf)


def run(int func_id, int dim, lower, upper, int pop_size, int n_max,
        long long budget, bint linear, double factor, seed):
    """Generational loop; same semantics and draw order as the pure engine.

    Returns (best_value, best_point, trajectory, evaluations_used) with the
    trajectory as a list of (evaluation_index, best_so_far) tuples.
    """
    if func_id < 0 or func_id >= NUM_FUNCTIONS:
        raise ValueError(f"unknown function id {func_id}")

    cdef Rng rng
    _rng_seed(&rng, <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF))

    cdef int pool_cap = pop_size + pop_size * n_max
    cdef double* lo = NULL
    cdef double* up = NULL
    cdef double* pos = NULL       # pool_cap x dim, parents first
    cdef double* obj = NULL       # pool_cap
    cdef double* newpos = NULL    # pop_size x dim
    cdef double* newobj = NULL    # pop_size
    cdef double* zvals = NULL     # pop_size
    cdef double* fits = NULL      # pop_size
    cdef double* bestpt = NULL    # dim
    cdef SortItem* items = NULL   # pool_cap

    cdef long long evals = 0
    cdef double best = INFINITY
    cdef bint have_best = 0
    cdef double s, fmin, fmax, span, val, u, r, d, xx, fi, cnt_d
    cdef int i, j, k, cnt, n_off, pool, src
    traj = []

    lo = <double*>malloc(dim * sizeof(double))
    up = <double*>malloc(dim * sizeof(double))
    pos = <double*>malloc(pool_cap * dim * sizeof(double))
    obj = <double*>malloc(pool_cap * sizeof(double))
    newpos = <double*>malloc(pop_size * dim * sizeof(double))
    newobj = <double*>malloc(pop_size * sizeof(double))
    zvals = <double*>malloc(pop_size * sizeof(double))
    fits = <double*>malloc(pop_size * sizeof(double))
    bestpt = <double*>malloc(dim * sizeof(double))
    items = <SortItem*>malloc(pool_cap * sizeof(SortItem))
    try:
        if (lo == NULL or up == NULL or pos == NULL or obj == NULL
                or newpos == NULL or newobj == NULL or zvals == NULL
                or fits == NULL or bestpt == NULL or items == NULL):
            raise MemoryError()
        for j in range(dim):
            lo[j] = lower[j]
            up[j] = upper[j]

        # uniform initialization, evaluating in creation order
        for i in range(pop_size):
            for j in range(dim):
                u = _rng_uniform(&rng)
                pos[i * dim + j] = lo[j] + u * (up[j] - lo[j])
            val = _eval(func_id, dim, &pos[i * dim])
            evals += 1
            obj[i] = val
            if val < best:
                best = val
                have_best = 1
                for j in range(dim):
                    bestpt[j] = pos[i * dim + j]
                traj.append((evals, val))

        while evals < budget:
            # steepness from completed evaluations at generation start
            if linear:
                s = evals / factor + 1.0
            else:
                s = 1.0

            fmin = obj[0]
            fmax = obj[0]
            for i in range(pop_size):
                if not isfinite(obj[i]):
                    raise ValueError(
                        f"objective produced a non-finite value: {obj[i]}")
                if obj[i] < fmin:
                    fmin = obj[i]
                if obj[i] > fmax:
                    fmax = obj[i]
            if fmax == fmin:
                for i in range(pop_size):
                    zvals[i] = 0.5
            else:
                span = fmax - fmin
                for i in range(pop_size):
                    zvals[i] = (fmax - obj[i]) / span
            for i in range(pop_size):
                fits[i] = 0.5 * (tanh(4.0 * s * zvals[i] - 2.0 * s) + 1.0)

            n_off = 0
            for i in range(pop_size):
                if evals >= budget:
                    break
                r = _rng_uniform(&rng)
                fi = fits[i]
                cnt_d = ceil(n_max * fi * r)
                cnt = <int>cnt_d
                if cnt < 1:
                    cnt = 1
                if cnt > n_max:
                    cnt = n_max
                for k in range(cnt):
                    if evals >= budget:
                        break
                    for j in range(dim):
                        u = _rng_uniform(&rng)
                        d = 2.0 * (u - 0.5) * (1.0 - fi)
                        xx = pos[i * dim + j] + (up[j] - lo[j]) * d
                        if xx < lo[j]:
                            xx = lo[j]
                        elif xx > up[j]:
                            xx = up[j]
                        pos[(pop_size + n_off) * dim + j] = xx
                    val = _eval(func_id, dim, &pos[(pop_size + n_off) * dim])
                    evals += 1
                    obj[pop_size + n_off] = val
                    if val < best:
                        best = val
                        have_best = 1
                        for j in range(dim):
                            bestpt[j] = pos[(pop_size + n_off) * dim + j]
                        traj.append((evals, val))
                    n_off += 1

            # survivors: pop_size lowest objectives, ties to earlier creation
            pool = pop_size + n_off
            for i in range(pool):
                items[i].obj = obj[i]
                items[i].idx = i
            qsort(items, pool, sizeof(SortItem), &_cmp_item)
            for i in range(pop_size):
                src = items[i].idx
                newobj[i] = obj[src]
                for j in range(dim):
                    newpos[i * dim + j] = pos[src * dim + j]
            for i in range(pop_size):
                obj[i] = newobj[i]
                for j in range(dim):
                    pos[i * dim + j] = newpos[i * dim + j]

        if len(traj) == 0 or <long long>(traj[len(traj) - 1][0]) != evals:
            traj.append((evals, best))

        if have_best:
            best_point = tuple([bestpt[j] for j in range(dim)])
        else:
            best_point = ()
        return best, best_point, traj, evals
    finally:
        free(lo)
        free(up)
        free(pos)
        free(obj)
        free(newpos)
        free(newobj)
        free(zvals)
        free(fits)
        free(bestpt)
        free(items)
