#!/usr/bin/env python3
"""Benchmark the hot kernels: numba lane vs pure-numpy fallback.

Times the workload in the current lane and, when the accelerated lane is
active, re-executes itself with ``WIRETAP_NUMBA=0`` to time the identical
workload on the pure-numpy lane, then prints the comparison.

Usage: python benchmarks/bench_kernels.py [--m 4] [--repeat 5]
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from wiretap import JIT_ENABLED, kernels
from wiretap.model import sample_channel
from wiretap.solver import AlternatingSettings, solve


def build_workloads(m, n_main, n_eave, seed=0):
    ch = sample_channel((m, n_main, n_eave), 10.0, 10.0, seed)
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    u, _ = kernels.qr_positive_k(np.ascontiguousarray(g))
    u = np.ascontiguousarray(u)
    lam = rng.uniform(0.2, 1.0, m)
    lam = np.ascontiguousarray(lam * (m / lam.sum()))
    am = np.ascontiguousarray(ch.h_main @ u.conj().T)
    d = np.ascontiguousarray(np.sum(np.abs(ch.h_eave @ u.conj().T) ** 2, axis=0))
    lin = np.ascontiguousarray(d / (1.0 + d * lam))
    p = kernels.covariance_from_factors_k(u, lam)
    raw = rng.random((2000, 2 * m * m + m + 2))
    budget = float(m)

    def rate_calls():
        acc = 0.0
        for _ in range(1000):
            acc += kernels.secrecy_rate_k(ch.h_main, ch.h_eave, p)
        return acc

    def pga():
        return kernels.subproblem_pga_k(am, lin, lam, budget, 1e-8, 500, 0.5, 1e-4, 1.0)

    def ascent():
        return kernels.unitary_ascent_k(
            ch.h_main, ch.h_eave, u, lam, 200, 1e-6, 0.5, 1e-4, 1.0, 10
        )

    def oracle():
        return kernels.oracle_scan_k(ch.h_main, ch.h_eave, raw, budget)

    def full_solve():
        return solve(ch, AlternatingSettings(rng_seed=1, n_starts=1))

    return [
        ("secrecy_rate_k x1000", rate_calls),
        ("subproblem_pga_k", pga),
        ("unitary_ascent_k", ascent),
        ("oracle_scan_k (2000 rows)", oracle),
        ("alternating solve (1 start)", full_solve),
    ]


def time_workloads(workloads, repeat):
    timings = {}
    for name, fn in workloads:
        fn()  # warm-up (triggers compilation on the accelerated lane)
        best = np.inf
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        timings[name] = best
    return timings


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=int, default=4, help="transmit antennas")
    parser.add_argument("--n-main", type=int, default=4)
    parser.add_argument("--n-eave", type=int, default=2)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true", help="emit raw timings (internal)")
    args = parser.parse_args(argv)

    timings = time_workloads(build_workloads(args.m, args.n_main, args.n_eave), args.repeat)
    if args.json:
        print(json.dumps(timings))
        return 0

    lane = "numba" if JIT_ENABLED else "numpy"
    print(f"dimensions: m={args.m}, n_main={args.n_main}, n_eave={args.n_eave}; "
          f"best of {args.repeat} runs; current lane: {lane}")
    if not JIT_ENABLED:
        print(f"{'workload':32s} {'numpy [ms]':>12s}")
        for name, t in timings.items():
            print(f"{name:32s} {1e3 * t:12.3f}")
        print("accelerated lane disabled (WIRETAP_NUMBA=0); unset it to compare lanes")
        return 0

    env = dict(os.environ, WIRETAP_NUMBA="0")
    cmd = [
        sys.executable, os.path.abspath(__file__), "--json",
        "--m", str(args.m), "--n-main", str(args.n_main),
        "--n-eave", str(args.n_eave), "--repeat", str(args.repeat),
    ]
    out = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
    fallback = json.loads(out.stdout)

    print(f"{'workload':32s} {'numba [ms]':>12s} {'numpy [ms]':>12s} {'speedup':>9s}")
    for name, t in timings.items():
        ref = fallback[name]
        print(f"{name:32s} {1e3 * t:12.3f} {1e3 * ref:12.3f} {ref / t:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
