#!/usr/bin/env python3
"""Sweep random graphs comparing the flow-based decomposition against
brute-force subset enumeration, plus the three fairness checkers.

Exits nonzero on the first disagreement and prints the offending graph
so it can be replayed with `fairexchange oracle`.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from fairexchange import (bottleneck_decomposition, check_lex_optimal,
                          check_market_equilibrium,
                          check_proportional_response, equilibrium_bundle,
                          parse_frac, serialize_graph)
from fairexchange.oracle import brute_decomposition, random_connected_graph


def decompositions_agree(fast, brute) -> bool:
    return (len(fast.pairs) == len(brute.pairs)
            and all(a.members == b.members and a.neighbors == b.neighbors
                    and a.alpha == b.alpha
                    for a, b in zip(fast.pairs, brute.pairs)))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--max-weight", type=int, default=9)
    parser.add_argument("--seeds", type=int, default=16,
                        help="seeds per (n, density) cell")
    parser.add_argument("--densities", type=parse_frac, nargs="+",
                        default=[Fraction(3, 10), Fraction(3, 5), Fraction(1)])
    parser.add_argument("--skip-checkers", action="store_true",
                        help="only compare decompositions")
    args = parser.parse_args()

    start = time.perf_counter()
    count = 0
    for n in range(args.min_n, args.max_n + 1):
        for d_index, density in enumerate(args.densities):
            for seed in range(args.seeds):
                g = random_connected_graph(
                    n, args.max_weight, density,
                    seed=n * 1000 + d_index * 100 + seed)
                fast = bottleneck_decomposition(g)
                brute = brute_decomposition(g)
                if not decompositions_agree(fast, brute):
                    print("MISMATCH on:", file=sys.stderr)
                    sys.stderr.write(serialize_graph(g))
                    return 1
                if not args.skip_checkers:
                    bundle = equilibrium_bundle(g)
                    reports = (
                        check_market_equilibrium(g, bundle),
                        check_proportional_response(g, bundle.allocation),
                        check_lex_optimal(g, bundle.allocation),
                    )
                    failed = [c for r in reports for c in r.conditions
                              if not c.holds]
                    if failed:
                        print(f"CHECKER FAILURE {failed[0].name}: "
                              f"{failed[0].witness}", file=sys.stderr)
                        sys.stderr.write(serialize_graph(g))
                        return 1
                count += 1
        print(f"n={n}: ok ({count} graphs so far)")
    elapsed = time.perf_counter() - start
    print(f"all {count} graphs agree with the oracle in {elapsed:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
