#!/usr/bin/env python3
"""Show d' products of coprime-order building blocks closing in on a target.

Every value printed is an exact rational; the gap column shrinks strictly
monotonically until it drops under epsilon.

Usage:
    python3 scripts/density_demo.py               # the four standard targets
    python3 scripts/density_demo.py 3 7 --epsilon 0.005
"""

import argparse
from fractions import Fraction

from dedekind.formulas import density_sequence

STANDARD_TARGETS = ((1, 2), (2, 3), (2, 5), (3, 7))


def show(a: int, b: int, epsilon: str) -> None:
    steps = density_sequence(a, b, epsilon)
    print(f"target {a}/{b}  (epsilon {epsilon})")
    for st in steps:
        primes = ",".join(str(p) for p in st.primes)
        print(
            f"  step {st.index:<3d} primes ({primes:<12s}) "
            f"value {str(st.value):<14s} gap {str(st.gap):<14s} ~ {float(st.gap):.2e}"
        )
    print(f"  -> gap below {epsilon} after {len(steps)} steps\n")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("a", type=int, nargs="?", help="target numerator")
    parser.add_argument("b", type=int, nargs="?", help="target denominator")
    parser.add_argument("--epsilon", default="0.01", help="stopping gap (default 0.01)")
    args = parser.parse_args()
    if (args.a is None) != (args.b is None):
        parser.error("give both a and b, or neither")
    targets = [(args.a, args.b)] if args.a is not None else list(STANDARD_TARGETS)
    for a, b in targets:
        show(a, b, args.epsilon)


if __name__ == "__main__":
    main()
