#!/usr/bin/env python3
"""Benchmark the compiled RNG/bootstrap core against the numpy fallback.

Run:  python benchmarks/bench_backends.py [--resamples 10000] [--repeats 20]

The two backends are bit-identical by contract; this script re-checks that
on every workload before timing it.
"""

import argparse
import time

import numpy as np

from rleval.backends import available_backends, get_backend
from rleval.rng import DOMAIN_BOOTSTRAP, derive_key


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--resamples", type=int, default=10000)
    parser.add_argument("--repeats", type=int, default=20)
    parser.add_argument("--blocks", type=int, default=250000)
    args = parser.parse_args()

    names = available_backends()
    if names == ["pure"]:
        print("compiled core unavailable; only the pure backend will run")
    backends = {name: get_backend(name) for name in names}

    key0, key1 = derive_key(20240607)
    sample = np.asarray(
        [135.7, 128.4, 141.9, 120.3, 150.8, 133.3, 137.2, 126.5, 144.0, 131.1]
    )

    workloads = {
        f"philox blocks ({args.blocks})": lambda b: b.philox_u32_blocks(
            key0, key1, 0, 3, 0, args.blocks
        ),
        f"bootstrap means (n=10, B={args.resamples})": lambda b: b.bootstrap_means(
            sample, args.resamples, key0, key1, DOMAIN_BOOTSTRAP
        ),
    }

    print(f"{'workload':40s}  " + "  ".join(f"{n:>10s}" for n in names) + "   speedup")
    for label, fn in workloads.items():
        outputs = {name: fn(impl) for name, impl in backends.items()}
        reference = outputs[names[0]]
        for name, out in outputs.items():
            assert np.array_equal(reference, out), f"{label}: {name} output differs"
        times = {name: _time(lambda impl=impl: fn(impl), args.repeats) for name, impl in backends.items()}
        cells = "  ".join(f"{times[n] * 1e3:8.2f}ms" for n in names)
        if len(names) == 2:
            speedup = times["pure"] / times["native"]
            print(f"{label:40s}  {cells}   {speedup:5.1f}x")
        else:
            print(f"{label:40s}  {cells}")


if __name__ == "__main__":
    main()
