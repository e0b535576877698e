#!/usr/bin/env python3
"""Benchmark the compiled Monte Carlo kernels against the numpy fallbacks.

    python benchmarks/bench_kernels.py [--trials N] [--pulses N] [--repeat K]

Times the two hot kernels (pair-correlation histogram, two-photon overlap)
and the end-to-end simulations through each backend, and cross-checks that
both produce the same numbers.
"""

import argparse
import math
import time

import numpy as np

from dotcav.photonstats import PulseTrainConfig, hbt_correlate, hom_overlap_mc, simulate_emission_train
from dotcav.photonstats.backend import get_kernels


def _best_of(repeat, func):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pulses", type=int, default=500_000)
    parser.add_argument("--trials", type=int, default=20_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    try:
        get_kernels("compiled")
        backends = ("python", "compiled")
    except ImportError:
        print("compiled extension not built; benchmarking the numpy fallback only\n")
        backends = ("python",)

    rec = simulate_emission_train(
        PulseTrainConfig(n_pulses=args.pulses, gamma=1.0 / 0.65, delta=100.0,
                         multi_excitation_prob=0.2, seed=0)
    )
    t1 = rec.detector_times(0)
    t2 = rec.detector_times(1)
    print(f"pair histogram: {t1.size} x {t2.size} detections, +-39 ns window, 0.1 ns bins")
    times = {}
    hists = {}
    for name in backends:
        kern = get_kernels(name)
        times[name] = _best_of(args.repeat, lambda: kern.pair_time_histogram(t1, t2, 0.1, 39.0, 780))
        hists[name] = kern.pair_time_histogram(t1, t2, 0.1, 39.0, 780)
        print(f"  {name:>9}: {times[name] * 1e3:8.1f} ms")
    if len(backends) == 2:
        assert np.array_equal(hists["python"], hists["compiled"]), "histogram backends diverged"
        print(f"  speedup: {times['python'] / times['compiled']:.1f}x (bitwise-identical counts)")

    print(f"\nHOM overlap kernel: {args.trials} trials, 1600-point grid")
    gamma, alpha, delta = 7.0710678, 1.0, 100.0
    means = {}
    for name in backends:
        t0 = time.perf_counter()
        est = hom_overlap_mc(gamma, alpha, delta, trials=args.trials, seed=0, backend=name)
        dt = time.perf_counter() - t0
        times[name] = dt
        means[name] = est.mean_overlap
        print(f"  {name:>9}: {dt:8.2f} s  (mean overlap {est.mean_overlap:.6f})")
    if len(backends) == 2:
        rel = abs(means["python"] - means["compiled"]) / means["compiled"]
        assert rel < 1e-10, "overlap backends diverged"
        print(f"  speedup: {times['python'] / times['compiled']:.1f}x "
              f"(means agree to {rel:.1e} relative)")

    print(f"\nend-to-end mc-g2 ({args.pulses} pulses, correlate + lifetime fit)")
    for name in backends:
        t0 = time.perf_counter()
        hbt_correlate(rec, backend=name)
        print(f"  {name:>9}: {time.perf_counter() - t0:8.2f} s")


if __name__ == "__main__":
    main()
