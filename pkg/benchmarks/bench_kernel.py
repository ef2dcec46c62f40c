"""Benchmark of the pure-Python kernel against the compiled one.

Runs the hot kernel operations on representative workloads and prints a
table of timings and speedups.  The workloads mirror what dominates
real use: polynomial products and iterated total derivatives during
determining-system assembly, and exact rref on the resulting systems.

    python benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from jetlaw._kernel import pure

try:
    from jetlaw._kernel import _speedups
except ImportError:
    _speedups = None


def _build_operand(k):
    # (1 + t + x + u + u_x + u_xx/2)^4: a dense-ish mixed polynomial
    e = {
        k.ONE_MONO: Fraction(1),
        (1, 0, ()): Fraction(1),
        (0, 1, ()): Fraction(1),
        (0, 0, ((0, 0, 1),)): Fraction(1),
        (0, 0, ((0, 1, 1),)): Fraction(1),
        (0, 0, ((0, 2, 1),)): Fraction(1, 2),
    }
    return k.pow_(e, 4)


def _bench_mul(k, repeat):
    f = _build_operand(k)
    start = time.perf_counter()
    for _ in range(repeat):
        k.mul(f, f)
    return time.perf_counter() - start


def _bench_total(k, repeat):
    f = _build_operand(k)
    start = time.perf_counter()
    for _ in range(repeat):
        g = f
        for _ in range(6):
            g = k.total_x(g)
    return time.perf_counter() - start


def _bench_pow(k, repeat):
    f = _build_operand(k)
    start = time.perf_counter()
    for _ in range(repeat):
        k.pow_(f, 3)
    return time.perf_counter() - start


def _bench_rref(k, repeat):
    n = 24
    rows = [
        [Fraction(1, i + j + 1) for j in range(n + 8)] for i in range(n)
    ]
    start = time.perf_counter()
    for _ in range(repeat):
        k.rref(rows)
    return time.perf_counter() - start


BENCHES = [
    ("mul (dense^4 squared)", _bench_mul),
    ("total_x x6", _bench_total),
    ("pow_ ^3", _bench_pow),
    ("rref 24x32 Hilbert", _bench_rref),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    if _speedups is None:
        print("compiled kernel not built; nothing to compare")
        return

    print(f"{'workload':<26} {'pure [s]':>10} {'compiled [s]':>13} {'speedup':>8}")
    for name, fn in BENCHES:
        tp = fn(pure, args.repeat)
        tc = fn(_speedups, args.repeat)
        print(f"{name:<26} {tp:>10.4f} {tc:>13.4f} {tp / tc:>7.2f}x")


if __name__ == "__main__":
    main()
