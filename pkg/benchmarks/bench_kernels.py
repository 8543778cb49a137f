"""Benchmark the compiled decoder kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--frames 50]

Times list decoding at a few (N, L) shapes on identical inputs, checks that
both backends agree (identical hard decisions, metrics within a relative
band), and prints a speedup table.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from polarharq._kernels import get_backend


def bench(backend, chan, roles, vals, cap, frames):
    seeds = np.zeros(1)
    best = float("inf")
    out = None
    reps = max(1, frames)
    t0 = time.perf_counter()
    for _ in range(reps):
        out = backend.decode_block(chan.copy(), roles.copy(), vals.copy(), seeds.copy(), cap)
    elapsed = (time.perf_counter() - t0) / reps
    return elapsed, out


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--frames", type=int, default=50)
    args = parser.parse_args()

    py = get_backend("python")
    try:
        comp = get_backend("compiled")
    except ImportError:
        raise SystemExit("compiled backend is not built; run pip install -e .")

    rng = np.random.default_rng(0)
    shapes = [(128, 8, 64), (256, 8, 108), (512, 8, 108), (512, 32, 108)]
    print(f"{'N':>5} {'L':>3} {'K':>4} {'python':>12} {'compiled':>12} {'speedup':>8}")
    for n, cap, k in shapes:
        roles = np.zeros(n, dtype=np.int8)
        active = rng.choice(n, size=k, replace=False)
        roles[active] = 1
        chan = np.ascontiguousarray(rng.normal(1.0, 2.0, (1, n)))
        vals = np.zeros((1, n), dtype=np.uint8)
        t_py, out_py = bench(py, chan, roles, vals, cap, max(3, args.frames // 10))
        t_c, out_c = bench(comp, chan, roles, vals, cap, args.frames)
        assert np.array_equal(out_py[0], out_c[0]), "backends disagree on decisions"
        assert np.allclose(out_py[1], out_c[1], rtol=1e-7), "backends disagree on metrics"
        print(
            f"{n:>5} {cap:>3} {k:>4} {t_py * 1e3:>10.2f}ms {t_c * 1e3:>10.2f}ms {t_py / t_c:>7.1f}x"
        )
    print("outputs agree across backends")


if __name__ == "__main__":
    main()
