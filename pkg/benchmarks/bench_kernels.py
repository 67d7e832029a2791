"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-``repeat`` time per call for each kernel and shape, and
checks that both backends return identical results.
"""

import argparse
import random
import timeit

from nca import _kernels_py

try:
    from nca import _kernels as compiled
except ImportError:
    compiled = None

SHAPES = [(9, 40, 3 ** 6), (18, 80, 2 ** 10), (27, 120, 5 ** 5), (36, 160, 7 ** 4)]


def cases(seed=0):
    rng = random.Random(seed)
    for n, k, m in SHAPES:
        rows = [[rng.randrange(m) for _ in range(n)] for _ in range(k)]
        sq = [[rng.randrange(m) for _ in range(n)] for _ in range(n)]
        p = 65521
        prow = [[rng.randrange(p) for _ in range(n)] for _ in range(k)]
        yield n, k, m, rows, sq, p, prow


def bench(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled is None:
        print("compiled extension not built; only the fallback is available")
    print(f"{'kernel':<12} {'shape':<16} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for n, k, m, rows, sq, p, prow in cases():
        jobs = [
            ("hnf_mod", f"{k}x{n} mod {m}", lambda b: b.hnf_mod(rows, n, m)),
            ("rref_mod_p", f"{k}x{n} mod {p}", lambda b: b.rref_mod_p(prow, n, p)),
            ("matmul_mod", f"{k}x{n}x{n}", lambda b: b.matmul_mod(rows, sq, m)),
        ]
        for name, shape, call in jobs:
            tp = bench(lambda: call(_kernels_py), args.repeat)
            if compiled is None:
                print(f"{name:<12} {shape:<16} {tp:10.5f}")
                continue
            if call(compiled) != call(_kernels_py):
                raise SystemExit(f"{name} backends disagree on {shape}")
            tc = bench(lambda: call(compiled), args.repeat)
            print(f"{name:<12} {shape:<16} {tp:10.5f} {tc:10.5f} {tp / tc:8.1f}")


if __name__ == "__main__":
    main()
