"""Compare the JIT-compiled kernels against the pure-numpy fallbacks.

Run twice to see both paths end to end, or rely on the in-process comparison
below, which times the numpy reference implementations directly against the
active (JIT) dispatch:

    python benchmarks/bench_kernels.py
    FRFTSYNC_NO_NUMBA=1 python benchmarks/bench_kernels.py

Note the package's hottest code path -- the fast transform itself -- is
FFT-bound and gains nothing from a JIT, so only the quadrature oracle and the
sliding timing metric have compiled variants.
"""

import time

import numpy as np

from frftsync import _kernels
from frftsync._kernels import _quadrature_numpy, _sc_metric_numpy


def timeit(fn, *args, repeat=5):
    fn(*args)  # warm-up (and JIT compile, when applicable)
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_quadrature(n):
    rng = np.random.default_rng(0)
    g = rng.normal(size=2 * n) + 1j * rng.normal(size=2 * n)
    args = (g, n, 1.0, np.sqrt(2.0), 0.5 + 0.1j)
    t_active = timeit(_kernels.fractional_quadrature, *args)
    t_numpy = timeit(_quadrature_numpy, *args)
    out_a = _kernels.fractional_quadrature(*args)
    out_n = _quadrature_numpy(*args)
    err = np.linalg.norm(out_a - out_n) / np.linalg.norm(out_n)
    return t_active, t_numpy, err


def bench_sc_metric(n):
    rng = np.random.default_rng(1)
    r = rng.normal(size=n) + 1j * rng.normal(size=n)
    args = (r, 512)
    t_active = timeit(_kernels.schmidl_cox_metric, *args)
    t_numpy = timeit(_sc_metric_numpy, *args)
    out_a = _kernels.schmidl_cox_metric(*args)
    out_n = _sc_metric_numpy(*args)
    err = np.linalg.norm(out_a - out_n) / np.linalg.norm(out_n)
    return t_active, t_numpy, err


def main():
    mode = "numba" if _kernels.numba_enabled() else "numpy (fallback)"
    print(f"active kernel path: {mode}\n")
    print(f"{'kernel':<28}{'active':>12}{'numpy':>12}{'speedup':>10}{'rel err':>12}")
    for n in (512, 1024, 2048):
        ta, tn, err = bench_quadrature(n)
        print(f"{'quadrature N=' + str(n):<28}{ta * 1e3:>10.2f}ms"
              f"{tn * 1e3:>10.2f}ms{tn / ta:>10.2f}{err:>12.2e}")
    for n in (4096, 16384, 65536):
        ta, tn, err = bench_sc_metric(n)
        print(f"{'sc metric len=' + str(n):<28}{ta * 1e3:>10.2f}ms"
              f"{tn * 1e3:>10.2f}ms{tn / ta:>10.2f}{err:>12.2e}")


if __name__ == "__main__":
    main()
