"""Benchmark the numba GF(p) kernels against the pure-numpy fallback.

Runs the workloads behind secant sampling (batch rank of evaluated matrices)
and Terracini spans (rank of a tall dense matrix).  Results from both backends
are compared before timing.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--batch 2000]
"""

import argparse
import time

import numpy as np

from secdet._kernels import _numba_impl as nb
from secdet._kernels import _numpy_impl as npi

P = 32003


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--batch", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    # secant sampling: a 4x5 matrix in 9 variables evaluated at many points, then ranked
    coeffs = rng.integers(0, P, size=(4, 5, 9), dtype=np.int64)
    pts = rng.integers(0, P, size=(args.batch, 9), dtype=np.int64)
    square = rng.integers(0, P, size=(60, 60), dtype=np.int64)
    tall = rng.integers(0, P, size=(200, 40), dtype=np.int64)

    cases = [
        ("eval_linear", lambda m: m.eval_linear_mod_p(coeffs, pts, P)),
        ("batch_rank", lambda m: m.batch_rank_mod_p(npi.eval_linear_mod_p(coeffs, pts, P), P)),
        ("rref 60x60", lambda m: m.rref_mod_p(square, P)),
        ("rank 200x40", lambda m: m.rank_mod_p(tall, P)),
    ]
    print(f"{'kernel':14s} {'numpy ms':>10s} {'numba ms':>10s} {'speedup':>8s}")
    for name, run in cases:
        a, b = run(npi), run(nb)          # also triggers JIT compilation
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        if not same:
            raise SystemExit(f"{name}: backends disagree")
        t_np = best_of(lambda: run(npi), args.repeat)
        t_nb = best_of(lambda: run(nb), args.repeat)
        print(f"{name:14s} {1e3 * t_np:10.2f} {1e3 * t_nb:10.2f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
