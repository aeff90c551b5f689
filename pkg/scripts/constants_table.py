#!/usr/bin/env python3
"""Reproduce the asymptotic constant table and companion constants.

Usage:
    python scripts/constants_table.py
    python scripts/constants_table.py --m 2,3,5,10,100,1000
"""

import argparse
import sys
from fractions import Fraction
from pathlib import Path

try:
    import gbswitch
except ImportError:
    sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))
    import gbswitch

from gbswitch import KM_EXPONENT_LIMIT, bh_asymptotic_constant, haagerup_f, km_constant
from gbswitch.cli import parse_int_list


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--m", type=parse_int_list, default=[2, 3, 5, 10, 100, 1000])
    args = parser.parse_args()

    print(f"{'m':>6}  {'bh constant':>12}  {'1.3 m^0.365':>12}  {'f(2(m-1)/m)':>12}")
    print("-" * 50)
    for m in args.m:
        f_val = haagerup_f(Fraction(2 * (m - 1), m)) if m >= 2 else float("nan")
        print(f"{m:>6}  {bh_asymptotic_constant(m):12.4f}  {km_constant(m):12.4f}  {f_val:12.6f}")
    print("-" * 50)
    print(f"exact power behind 0.365: (2 - ln 2 - gamma)/2 = {KM_EXPONENT_LIMIT:.10f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
