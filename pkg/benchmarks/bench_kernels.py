"""Time the numba kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--sweep-free K]
"""

import argparse
import time

import numpy as np

from calgebra import kernels


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seeds", type=int, default=200, help="random seeds per closure run")
    ap.add_argument("--sweep-free", type=int, default=18, help="free elements in the subset sweep (2^K subsets)")
    args = ap.parse_args()

    if not kernels.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    rng = np.random.default_rng(0)
    rows = []
    for width in (3, 4):
        tb = kernels.op_tables(width)
        n = 3 ** width
        seeds = rng.random((args.seeds, n)) < 2.0 / n
        seeds[:, [0, (n - 1) // 2, n - 1]] = True

        def run(fn):
            return lambda: [fn(tb["neg"], tb["conj"], s) for s in seeds]

        run(kernels.closure_numba)()  # compile
        for a, b in zip(run(kernels.closure_numpy)(), run(kernels.closure_numba)()):
            assert np.array_equal(a, b)
        rows.append((f"closure 3^{width} x{args.seeds}",
                     best_of(run(kernels.closure_numpy), args.repeat),
                     best_of(run(kernels.closure_numba), args.repeat)))

    tb = kernels.op_tables(3)
    base = [0, 13, 26]
    free = [i for i in range(27) if i not in base][: args.sweep_free]

    def sweep(fn):
        return lambda: fn(tb["neg"], tb["conj"], base, free)

    sweep(kernels.closed_subsets_numba)()  # compile
    assert np.array_equal(sweep(kernels.closed_subsets_numpy)(), sweep(kernels.closed_subsets_numba)())
    rows.append((f"subset sweep 2^{len(free)}",
                 best_of(sweep(kernels.closed_subsets_numpy), max(1, args.repeat // 2)),
                 best_of(sweep(kernels.closed_subsets_numba), args.repeat)))

    print(f"{'kernel':28s} {'numpy [s]':>10s} {'numba [s]':>10s} {'speedup':>8s}")
    for name, tn, tj in rows:
        print(f"{name:28s} {tn:10.4f} {tj:10.4f} {tn / tj:7.1f}x")


if __name__ == "__main__":
    main()
