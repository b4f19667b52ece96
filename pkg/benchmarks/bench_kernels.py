"""Benchmark the jitted kernels against the pure-Python/numpy fallback.

Runs each workload in two subprocesses -- one with numba active, one with
``LINPACKET_DISABLE_NUMBA=1`` -- and prints a comparison table.  Within each
worker the kernels are warmed up before timing, so JIT compilation is not
counted.

Usage:  python benchmarks/bench_kernels.py [--repeats N]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time


def workloads():
    import numpy as np

    import linpacket as lp

    force = lp.ForceProfile.sinusoidal(1.0, 2.0, 0.3)
    c = lp.InvariantCoeffs(a0=1.0, b0=0.4, c0=0.2, params=lp.PhysicalParams(),
                           force=force)
    spec = lp.PacketSpec(coeffs=c, a=0.5)
    grid = lp.GridSpec(-20.0, 20.0, 2048, 1e-3)
    weight = lp.WeightFunction.gaussian(0.5, n_lambda=256)

    def quadrature_sweep():
        total = 0.0
        for t in np.linspace(0.01, 1.2, 200):
            total += lp.uncertainty_product(spec, float(t))
        return total

    def propagation():
        state = lp.init_from_packet(spec, grid, 0.0)
        return lp.propagate(state, c, 0.5).norm()

    def superposition():
        return lp.superpose(weight, c, grid, 0.5).norm()

    return {
        "quadrature_sweep_200pts": quadrature_sweep,
        "propagate_500_steps_n2048": propagation,
        "superpose_256x2048": superposition,
    }


def run_worker(repeats: int) -> None:
    import linpacket as lp

    results = {"numba": lp.NUMBA_ENABLED}
    for name, fn in workloads().items():
        fn()  # warm-up (JIT compile on the numba path)
        best = min(_timed(fn) for _ in range(repeats))
        results[name] = best
    print(json.dumps(results))


def _timed(fn) -> float:
    tic = time.perf_counter()
    fn()
    return time.perf_counter() - tic


def spawn(disable_numba: bool, repeats: int) -> dict:
    env = dict(os.environ)
    env["LINPACKET_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, os.path.abspath(__file__), "--worker",
         "--repeats", str(repeats)],
        env=env, capture_output=True, text=True, check=True)
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repeats per workload (best is kept)")
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        run_worker(args.repeats)
        return

    fast = spawn(disable_numba=False, repeats=args.repeats)
    slow = spawn(disable_numba=True, repeats=args.repeats)
    if not fast.pop("numba"):
        print("warning: numba unavailable; both columns ran the fallback path")
    slow.pop("numba")

    width = max(len(k) for k in fast)
    print(f"{'workload':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, t_fast in fast.items():
        t_slow = slow[name]
        print(f"{name:<{width}}  {t_fast:>9.4f}s  {t_slow:>9.4f}s  "
              f"{t_slow / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
