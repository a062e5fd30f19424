#!/usr/bin/env python3
"""Time the order-216 milestone: full lattice enumeration and the d' ratio.

The group is the cyclic group of order 27 extended by the order-8 quaternion
group (half of it inverting, half acting trivially); its 216 elements make it
the largest prescribed corpus member, so it doubles as a performance canary.

Usage:
    python3 scripts/order216_bench.py [--repeat N]
"""

import argparse
import time
from fractions import Fraction

from dedekind.families import c27_rtimes_q8
from dedekind.invariants import compute_report


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=1)
    args = parser.parse_args()

    for i in range(args.repeat):
        t0 = time.perf_counter()
        g = c27_rtimes_q8()
        built = time.perf_counter()
        report = compute_report(g, spec="C27Q8", want_d_star=False)
        done = time.perf_counter()
        print(
            f"run {i + 1}: build {built - t0:.2f}s, "
            f"lattice+invariants {done - built:.2f}s, total {done - t0:.2f}s"
        )
        print(
            f"  order {report.order}, |L| = {report.lattice_size}, "
            f"k' = {report.k_prime}, |N| = {report.normal_count}, nu = {report.nu}"
        )
        print(f"  d' = {report.d_prime}")
        assert report.d_prime == Fraction(2, 11)
    print("d' = 2/11 confirmed exactly")


if __name__ == "__main__":
    main()
