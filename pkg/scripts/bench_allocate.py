#!/usr/bin/env python3
"""Time the full pipeline (decompose, trade, price, self-check) for a
range of graph sizes, to keep an eye on how the exact arithmetic scales."""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction

from fairexchange import (check_lex_optimal, check_market_equilibrium,
                          check_proportional_response, equilibrium_bundle,
                          parse_frac)
from fairexchange.oracle import random_connected_graph


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--sizes", type=int, nargs="+",
                        default=[25, 50, 100, 200])
    parser.add_argument("--max-weight", type=int, default=100)
    parser.add_argument("--density", type=parse_frac, default=Fraction(1, 10))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--with-checks", action="store_true",
                        help="include the three fairness checkers in the timing")
    args = parser.parse_args()

    for n in args.sizes:
        g = random_connected_graph(n, args.max_weight, args.density, args.seed)
        start = time.perf_counter()
        bundle = equilibrium_bundle(g)
        build = time.perf_counter() - start
        line = f"n={n:5d} edges={len(g.edges):6d} allocate={build:7.2f}s"
        if args.with_checks:
            start = time.perf_counter()
            ok = (check_market_equilibrium(g, bundle).passed
                  and check_proportional_response(g, bundle.allocation).passed
                  and check_lex_optimal(g, bundle.allocation).passed)
            check = time.perf_counter() - start
            line += f" check={check:7.2f}s passed={ok}"
        assert bundle.decomposition is not None
        line += f" pairs={len(bundle.decomposition.pairs)}"
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
