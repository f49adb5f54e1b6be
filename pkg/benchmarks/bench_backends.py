"""Compare the numba kernels against the pure-numpy fallback.

Runs both backend implementations on identical inputs, checks that the
outputs match bit for bit, and reports timings. Invoke directly:

    python benchmarks/bench_backends.py

The package-level switch is the PLANTEDMST_BACKEND environment variable
(auto | numba | numpy); this script imports both implementations
explicitly, so the variable does not matter here.
"""

import time

import numpy as np

from plantedmst import _kernels_numba, _kernels_numpy


def timeit(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def bench_kruskal(n, seed):
    rng = np.random.default_rng(seed)
    weights = rng.exponential(float(n), size=n * (n - 1) // 2)
    order = np.argsort(weights, kind="stable")
    _kernels_numba.kruskal_select(np.arange(6, dtype=np.int64), 4)  # warm compile
    (us_nb, vs_nb), t_nb = timeit(_kernels_numba.kruskal_select, order, n)
    (us_np, vs_np), t_np = timeit(_kernels_numpy.kruskal_select, order, n, repeat=1)
    assert np.array_equal(us_nb, us_np) and np.array_equal(vs_nb, vs_np)
    print(
        f"kruskal_select  n={n:5d} ({len(order):>8} edges): "
        f"numba {t_nb * 1e3:8.2f} ms   numpy {t_np * 1e3:10.2f} ms   "
        f"speedup {t_np / t_nb:7.1f}x"
    )


def bench_prufer(n, seed):
    rng = np.random.default_rng(seed)
    codes = rng.integers(0, n, size=(200, n - 2)).astype(np.int64)
    _kernels_numba.prufer_decode(codes[0], n)  # warm compile

    def run(impl):
        return [impl.prufer_decode(code, n) for code in codes]

    out_nb, t_nb = timeit(run, _kernels_numba)
    out_np, t_np = timeit(run, _kernels_numpy, repeat=1)
    for (a, b), (c, d) in zip(out_nb, out_np):
        assert np.array_equal(a, c) and np.array_equal(b, d)
    print(
        f"prufer_decode   n={n:5d} (200 decodes):      "
        f"numba {t_nb * 1e3:8.2f} ms   numpy {t_np * 1e3:10.2f} ms   "
        f"speedup {t_np / t_nb:7.1f}x"
    )


def main():
    print("backend benchmark: identical outputs asserted, best of 3 runs\n")
    for n in (500, 1000, 2000):
        bench_kruskal(n, seed=n)
    for n in (1000, 4000, 8192):
        bench_prufer(n, seed=n)


if __name__ == "__main__":
    main()
