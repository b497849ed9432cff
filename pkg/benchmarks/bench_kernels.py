"""Benchmark the compiled elimination kernels against the Python fallback.

Runs Hermite, Smith and determinant kernels on random matrices of growing
size and entry width, timing both backends on identical inputs.  Invoke as:

    python3 benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

from __future__ import annotations

import argparse
import random
import time

import coxforge._kernels_py as py

try:
    import coxforge._speedups as sp
except ImportError:
    sp = None


def _time(func, inputs, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        for m in inputs:
            func(m)
        best = min(best, time.perf_counter() - start)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=5, help="timing repeats")
    parser.add_argument("--seed", type=int, default=20250825, help="input seed")
    args = parser.parse_args()

    if sp is None:
        print("compiled backend not built; showing Python-only timings")

    rng = random.Random(args.seed)
    cases = [
        ("hnf", "4x6, |e| <= 9", lambda: [[rng.randint(-9, 9) for _ in range(6)] for _ in range(4)], 200),
        ("hnf", "10x14, |e| <= 99", lambda: [[rng.randint(-99, 99) for _ in range(14)] for _ in range(10)], 60),
        ("hnf", "20x24, |e| <= 999", lambda: [[rng.randint(-999, 999) for _ in range(24)] for _ in range(20)], 12),
        ("smith", "4x6, |e| <= 9", lambda: [[rng.randint(-9, 9) for _ in range(6)] for _ in range(4)], 120),
        ("smith", "8x10, |e| <= 99", lambda: [[rng.randint(-99, 99) for _ in range(10)] for _ in range(8)], 30),
        ("det", "8x8, |e| <= 99", lambda: [[rng.randint(-99, 99) for _ in range(8)] for _ in range(8)], 200),
        ("det", "16x16, |e| <= 10^6", lambda: [[rng.randint(-10**6, 10**6) for _ in range(16)] for _ in range(16)], 40),
    ]

    header = f"{'kernel':<7} {'case':<20} {'python':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, label, make, count in cases:
        inputs = [make() for _ in range(count)]
        py_func = getattr(py, name)
        t_py = _time(py_func, inputs, args.repeat)
        if sp is None:
            print(f"{name:<7} {label:<20} {t_py * 1e3:>8.2f}ms {'-':>10} {'-':>8}")
            continue
        sp_func = getattr(sp, name)
        t_sp = _time(sp_func, inputs, args.repeat)
        for m in inputs[: min(10, len(inputs))]:
            assert py_func(m) == sp_func(m), "backends disagree"
        print(
            f"{name:<7} {label:<20} {t_py * 1e3:>8.2f}ms {t_sp * 1e3:>8.2f}ms "
            f"{t_py / t_sp:>7.2f}x"
        )


if __name__ == "__main__":
    main()
