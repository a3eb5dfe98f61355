"""Time the compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``; pass ``--repeat`` to change
the number of timing rounds.
"""

from __future__ import annotations

import argparse
import random
import sys
import timeit

from sftprop import _pure, kernels
from sftprop.weighted import FiniteMonoid


def _fixed_point_case(rng: random.Random):
    mon = FiniteMonoid.cyclic(4)
    table = [list(r) for r in mon.table]
    matrix = [[rng.randint(0, 2) for _ in range(7)] for _ in range(7)]
    return table, mon.unit, [0, 3, 2, 1], matrix


def _factor_case(rng: random.Random):
    rows = [[rng.randint(1, 3) for _ in range(3)] for _ in range(3)]
    return rows, 3, 3, 0


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    if kernels.compiled is None:
        print("compiled extension not available; build it with `pip install --no-build-isolation -e .`")
        return 1
    rng = random.Random(args.seed)
    cases = {
        "count_fixed_points (Z/4, 7x7)": ("count_fixed_points", _fixed_point_case(rng)),
        "factorizations (3x3, r=3)": ("factorizations", _factor_case(rng)),
    }
    print(f"{'kernel':34} {'pure (s)':>10} {'compiled (s)':>13} {'speedup':>8}")
    for label, (fn, case) in cases.items():
        pure_fn, fast_fn = getattr(_pure, fn), getattr(kernels.compiled, fn)
        if pure_fn(*case) != fast_fn(*case):
            print(f"{label}: backends disagree", file=sys.stderr)
            return 2
        t_pure = min(timeit.repeat(lambda: pure_fn(*case), number=1, repeat=args.repeat))
        t_fast = min(timeit.repeat(lambda: fast_fn(*case), number=1, repeat=args.repeat))
        print(f"{label:34} {t_pure:10.4f} {t_fast:13.4f} {t_pure / t_fast:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
