#!/usr/bin/env python3
"""Exhaustive census of exact game values over all n x n sign boards.

Enumerates every +/-1 board for n up to --max-n (default 4, i.e. 2^16
boards), prints the value histogram, the minimum against the proven lower
bound n**1.5 / (1.3 * 2**0.365), and the count of boards attaining the
absolute floor 2**(-1/2) n**(3/2) (eight at n = 2, none beyond).

Usage:
    python scripts/value_census.py [--max-n 4]
"""

import argparse
import sys
from collections import Counter
from pathlib import Path

try:
    import gbswitch
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
    import gbswitch

import numpy as np

from gbswitch import DimSpec, exact_max, km_constant, make_tensor


def census(n: int) -> Counter:
    dims = DimSpec(2, n)
    codes = np.arange(1 << (n * n), dtype=np.int64)
    rows = ((codes[:, None] >> np.arange(n * n)) & 1).astype(np.int8) * 2 - 1
    return Counter(exact_max(make_tensor(dims, row)).value for row in rows)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=4)
    args = parser.parse_args()

    for n in range(2, args.max_n + 1):
        hist = census(n)
        total = sum(hist.values())
        floor = 2 ** (-0.5) * n ** 1.5
        bound = n ** 1.5 / km_constant(2)
        print(f"n = {n}: {total} boards")
        for value in sorted(hist):
            share = hist[value] / total
            print(f"  value {value:>3}: {hist[value]:>7} boards ({share:7.2%})")
        print(f"  minimum {min(hist)} vs proven bound {bound:.4f}")
        at_floor = sum(cnt for v, cnt in hist.items() if abs(v - floor) < 1e-9)
        print(f"  boards at the floor 2^(-1/2) n^(3/2) = {floor:.4f}: {at_floor}")
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
