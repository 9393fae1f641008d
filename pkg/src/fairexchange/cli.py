"""Command-line interface.

Subcommands:
  decompose   print the bottleneck pairs of a graph
  allocate    run the full pipeline and print allocation, prices, utilities
  verify      check fairness properties of an allocation file against a graph
  oracle      cross-check the flow-based decomposition against brute force
  gen         emit a seeded random connected graph in the text format

Graphs are read from a file path or ``-`` for stdin.  ``--json`` switches
every subcommand to deterministic JSON on stdout.  Exit codes: 0 success,
1 a verified property fails on external data, 2 invalid input, 3 an
internal invariant failed (a bug, not your data).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .decomposition import bottleneck_decomposition, decomposition_json
from .fairness import (ConditionResult, FairnessReport, check_lex_optimal,
                       check_market_equilibrium, check_proportional_response,
                       report_json)
from .fmt import approx, frac_str, parse_frac
from .graphs import (GraphFormatError, InvariantViolation, WeightedGraph,
                     parse_graph, serialize_graph)
from .mechanism import (EquilibriumBundle, allocation_from_json,
                        allocation_json, bd_allocation, bundle_json,
                        equilibrium_bundle, equilibrium_prices,
                        prices_from_json, utilities)
from .oracle import DEFAULT_LIMIT, brute_decomposition, random_connected_graph

EXIT_OK = 0
EXIT_PROPERTY_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_INTERNAL = 3


@dataclass
class RunConfig:
    command: str
    input_path: str = "-"
    as_json: bool = False
    oracle_limit: int = DEFAULT_LIMIT
    allocation_path: str | None = None
    n: int = 8
    max_weight: int = 9
    density: Fraction = Fraction(1, 2)
    seed: int = 0


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _print_report(name: str, report: FairnessReport) -> None:
    for cond in report.conditions:
        status = "ok" if cond.holds else "FAIL"
        line = f"{name}/{cond.name}: {status}"
        if cond.witness:
            line += f" ({cond.witness})"
        print(line)


def cmd_decompose(cfg: RunConfig) -> int:
    g = parse_graph(_read_text(cfg.input_path))
    decomposition = bottleneck_decomposition(g)
    if cfg.as_json:
        _emit_json(decomposition_json(decomposition))
        return EXIT_OK
    for pair in decomposition.pairs:
        print(f"pair {pair.index}: alpha = {frac_str(pair.alpha)}"
              f" (~{approx(pair.alpha)})")
        print(f"  B = {' '.join(sorted(pair.members))}")
        print(f"  C = {' '.join(sorted(pair.neighbors))}")
    return EXIT_OK


def _run_reports(g: WeightedGraph, bundle: EquilibriumBundle) -> dict[str, FairnessReport]:
    reports = {"market_equilibrium": check_market_equilibrium(g, bundle)}
    reports["proportional_response"] = check_proportional_response(g, bundle.allocation)
    clearance_ok = all(c.holds for c in reports["market_equilibrium"].conditions
                       if c.name == "market_clearance")
    if clearance_ok:
        reports["lex_optimality"] = check_lex_optimal(g, bundle.allocation)
    else:
        reports["lex_optimality"] = FairnessReport.collect([
            ConditionResult("lex_optimality", False,
                            "not checkable: market clearance fails"),
        ])
    return reports


def cmd_allocate(cfg: RunConfig) -> int:
    g = parse_graph(_read_text(cfg.input_path))
    bundle = equilibrium_bundle(g)
    reports = _run_reports(g, bundle)
    all_passed = all(r.passed for r in reports.values())
    if cfg.as_json:
        payload = bundle_json(g, bundle)
        payload["checks"] = {name: report_json(r) for name, r in reports.items()}
        _emit_json(payload)
    else:
        assert bundle.decomposition is not None
        for pair in bundle.decomposition.pairs:
            print(f"pair {pair.index}: alpha = {frac_str(pair.alpha)}")
        for (u, v), x in sorted(bundle.allocation.fractions.items()):
            print(f"x[{u} -> {v}] = {frac_str(x)}")
        for v in g.vertices:
            print(f"{v}: price = {frac_str(bundle.prices[v])}, "
                  f"utility = {frac_str(bundle.utilities[v])}")
        for name, report in reports.items():
            _print_report(name, report)
    if not all_passed:
        # the bundle we just constructed failing its own checks is a bug
        print("internal error: constructed allocation failed verification",
              file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    g = parse_graph(_read_text(cfg.input_path))
    if cfg.allocation_path is None:
        raise ValueError("verify requires --allocation FILE")
    payload = json.loads(_read_text(cfg.allocation_path))
    if isinstance(payload, dict) and "allocation" in payload:
        allocation = allocation_from_json(g, payload["allocation"])
        if "prices" in payload:
            prices = prices_from_json(g, payload["prices"])
        else:
            prices = equilibrium_prices(g, bottleneck_decomposition(g))
    elif isinstance(payload, list):
        allocation = allocation_from_json(g, payload)
        prices = equilibrium_prices(g, bottleneck_decomposition(g))
    else:
        raise ValueError("allocation file must be an entry array or a bundle object")
    bundle = EquilibriumBundle(allocation=allocation, prices=prices,
                               utilities=utilities(g, allocation))
    reports = _run_reports(g, bundle)
    all_passed = all(r.passed for r in reports.values())
    if cfg.as_json:
        _emit_json({
            "passed": all_passed,
            "checks": {name: report_json(r) for name, r in reports.items()},
        })
    else:
        for name, report in reports.items():
            _print_report(name, report)
        print("result: " + ("all properties hold" if all_passed
                            else "property violations found"))
    return EXIT_OK if all_passed else EXIT_PROPERTY_FAILED


def cmd_oracle(cfg: RunConfig) -> int:
    g = parse_graph(_read_text(cfg.input_path))
    fast = bottleneck_decomposition(g)
    brute = brute_decomposition(g, limit=cfg.oracle_limit)
    agree = (len(fast.pairs) == len(brute.pairs)
             and all(a.members == b.members and a.neighbors == b.neighbors
                     and a.alpha == b.alpha
                     for a, b in zip(fast.pairs, brute.pairs)))
    if cfg.as_json:
        _emit_json({
            "match": agree,
            "flow": decomposition_json(fast),
            "brute_force": decomposition_json(brute),
        })
    else:
        print("flow-based:")
        for pair in fast.pairs:
            print(f"  pair {pair.index}: alpha = {frac_str(pair.alpha)}, "
                  f"B = {{{' '.join(sorted(pair.members))}}}, "
                  f"C = {{{' '.join(sorted(pair.neighbors))}}}")
        print("brute-force:")
        for pair in brute.pairs:
            print(f"  pair {pair.index}: alpha = {frac_str(pair.alpha)}, "
                  f"B = {{{' '.join(sorted(pair.members))}}}, "
                  f"C = {{{' '.join(sorted(pair.neighbors))}}}")
        print("MATCH" if agree else "MISMATCH")
    if not agree:
        print("internal error: decomposition disagrees with brute force",
              file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


def cmd_gen(cfg: RunConfig) -> int:
    g = random_connected_graph(cfg.n, cfg.max_weight, cfg.density, cfg.seed)
    header = (f"# random connected graph: n={cfg.n} max_weight={cfg.max_weight} "
              f"density={frac_str(cfg.density)} seed={cfg.seed}\n")
    sys.stdout.write(header + serialize_graph(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fairexchange",
        description="Bottleneck decomposition and fair exchange allocation "
                    "with exact rational arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input(p):
        p.add_argument("input", nargs="?", default="-",
                       help="graph file in the text format, or - for stdin")
        p.add_argument("--json", action="store_true", dest="as_json",
                       help="emit deterministic JSON instead of text")

    p = sub.add_parser("decompose", help="print the bottleneck pairs")
    add_input(p)
    p = sub.add_parser("allocate", help="decompose, trade, price, and self-check")
    add_input(p)
    p = sub.add_parser("verify", help="check fairness properties of an allocation file")
    add_input(p)
    p.add_argument("--allocation", required=True, dest="allocation_path",
                   help="JSON file: entry array or object with allocation/prices")
    p = sub.add_parser("oracle", help="cross-check against brute force (small graphs)")
    add_input(p)
    p.add_argument("--oracle-limit", type=int, default=DEFAULT_LIMIT,
                   help="refuse brute force beyond this many vertices")
    p = sub.add_parser("gen", help="emit a seeded random connected graph")
    p.add_argument("--json", action="store_true", dest="as_json",
                   help=argparse.SUPPRESS)
    p.add_argument("--n", type=int, default=8, help="number of vertices")
    p.add_argument("--max-weight", type=int, default=9, dest="max_weight",
                   help="weights are uniform in [1, MAX_WEIGHT]")
    p.add_argument("--density", type=parse_frac, default=Fraction(1, 2),
                   help="probability of each non-tree edge, in (0, 1]")
    p.add_argument("--seed", type=int, default=0, help="RNG seed")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for name in ("input_path", "as_json", "oracle_limit", "allocation_path",
                 "n", "max_weight", "density", "seed"):
        source = "input" if name == "input_path" else name
        if hasattr(args, source):
            setattr(cfg, name, getattr(args, source))
    return cfg


COMMANDS = {
    "decompose": cmd_decompose,
    "allocate": cmd_allocate,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "gen": cmd_gen,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)
    try:
        return COMMANDS[cfg.command](cfg)
    except InvariantViolation as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        # GraphFormatError and JSON decode errors are ValueErrors
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
