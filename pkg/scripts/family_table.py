#!/usr/bin/env python3
"""Print the invariant table for the standard corpus, family by family.

Usage:
    python3 scripts/family_table.py                 # everything
    python3 scripts/family_table.py --family M      # one family tag
    python3 scripts/family_table.py --max-order 64
"""

import argparse

from dedekind.invariants import compute_report
from dedekind.verify import CorpusConfig, build_corpus


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--family", help="family tag: C, EA, D, Q, M, He, G, H, K, SD, x")
    parser.add_argument("--max-order", type=int, default=512)
    args = parser.parse_args()

    corpus = build_corpus(CorpusConfig())
    entries = [
        e
        for e in corpus
        if e.group.order <= args.max_order
        and (args.family is None or e.tag == args.family)
    ]
    if not entries:
        raise SystemExit("no corpus entries match the filter")

    header = (
        f"{'spec':<24s} {'order':>5s} {'|L|':>6s} {'k_':>6s} {'|N|':>5s} "
        f"{'nu':>4s} {'d_':>10s} {'d*':>10s}"
    )
    print(header)
    print("-" * len(header))
    for e in entries:
        r = compute_report(
            e.group,
            spec=e.spec,
            want_d_star=e.group.order <= corpus.config.dstar_order_limit,
        )
        ds = "-" if r.d_star is None else str(r.d_star)
        print(
            f"{r.spec:<24s} {r.order:>5d} {r.lattice_size:>6d} {r.k_prime:>6d} "
            f"{r.normal_count:>5d} {r.nu:>4d} {str(r.d_prime):>10s} {ds:>10s}"
        )
    print(f"{len(entries)} groups")


if __name__ == "__main__":
    main()
