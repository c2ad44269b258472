"""Time fwht on each available backend, plus the dense O(N^2) reference.

Usage: python3 benchmarks/bench_fwht.py [--max-n 20] [--repeat 3]
"""

import argparse
import time

import numpy as np

from qrotor.bitalgebra import available_backends, fwht, fwht_naive

NAIVE_MAX_N = 12


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=20)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    rng = np.random.default_rng(0)
    backends = available_backends()
    print("n".rjust(3), *(f"{b} [ms]".rjust(14) for b in backends), "naive [ms]".rjust(14),
          "cy/np".rjust(9))
    for n in range(4, args.max_n + 1, 2):
        v = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        row = {b: best_time(lambda b=b: fwht(v, backend=b), args.repeat) for b in backends}
        naive = best_time(lambda: fwht_naive(v), args.repeat) if n <= NAIVE_MAX_N else None
        cols = [f"{row[b] * 1e3:14.3f}" for b in backends]
        cols.append(f"{naive * 1e3:14.3f}" if naive is not None else "-".rjust(14))
        speedup = row["numpy"] / row["cython"] if "cython" in row else float("nan")
        print(f"{n:3d}", *cols, f"{speedup:9.1f}")


if __name__ == "__main__":
    main()
