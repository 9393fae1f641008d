"""Flow-based trade construction on top of a bottleneck decomposition.

Each pair (B, C) with ratio a < 1 trades only across B-C edges: a
saturating bipartite flow ships every unit of B's resource to C, and C
returns it scaled down by a.  A final self-paired step with ratio 1
trades inside its own vertex set through a doubled copy of itself.
Prices a*w on B and plain w on C support the result as a market
equilibrium; utilities are always recomputed from the allocation so the
closed forms stay checkable facts rather than definitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .decomposition import (BottleneckPair, Decomposition,
                            bottleneck_decomposition, decomposition_json)
from .flow import (SINK, SOURCE, UNBOUNDED, Arc, FlowNetwork,
                   build_alpha_network, demand_node, max_flow,
                   min_cut_minimal, supply_node)
from .fmt import frac_str, parse_frac
from .graphs import (InvariantViolation, WeightedGraph, induced_subgraph,
                     total_weight)


@dataclass(frozen=True)
class Allocation:
    """Traded fraction per ordered adjacent pair; absent means zero."""

    graph: WeightedGraph
    fractions: dict[tuple[str, str], Fraction]

    @classmethod
    def build(cls, graph: WeightedGraph,
              fractions: dict[tuple[str, str], Fraction]) -> "Allocation":
        cleaned: dict[tuple[str, str], Fraction] = {}
        for (u, v), value in fractions.items():
            if not graph.has_edge(u, v):
                raise ValueError(f"allocation on non-edge ({u!r}, {v!r})")
            value = Fraction(value)
            if value < 0 or value > 1:
                raise ValueError(f"fraction x[{u},{v}] = {frac_str(value)} outside [0, 1]")
            if value:
                cleaned[(u, v)] = value
        return cls(graph, cleaned)

    def fraction(self, u: str, v: str) -> Fraction:
        return self.fractions.get((u, v), Fraction(0))

    def sent(self, u: str) -> Fraction:
        return sum((self.fraction(u, v) for v in self.graph.adjacency[u]),
                   Fraction(0))


@dataclass(frozen=True)
class EquilibriumBundle:
    """Allocation with its supporting prices and recomputed utilities."""

    allocation: Allocation
    prices: dict[str, Fraction]
    utilities: dict[str, Fraction]
    decomposition: Decomposition | None = None


def _solve_pair_network(net: FlowNetwork, expected: Fraction,
                        pair: BottleneckPair):
    result = max_flow(net)
    if result.value != expected:
        blocking = sorted(min_cut_minimal(result))
        raise InvariantViolation(
            f"pair {pair.index}: trade flow moves {frac_str(result.value)} of "
            f"{frac_str(expected)}; blocking cut {blocking}")
    return result


def _cross_trade(g: WeightedGraph, pair: BottleneckPair) -> dict[tuple[str, str], Fraction]:
    """Ratio < 1: B ships across B-C edges, C pays back scaled by alpha.

    Sink capacities w_v / alpha sum to w(B), so a saturating flow exists
    and every sink arc fills; that is exactly what makes the scaled
    return fractions sum to 1 on the C side.
    """
    members = sorted(pair.members)
    nbrs = sorted(pair.neighbors)
    arcs = [Arc(SOURCE, supply_node(u), Fraction(g.weights[u])) for u in members]
    arcs.extend(Arc(demand_node(v), SINK, Fraction(g.weights[v]) / pair.alpha)
                for v in nbrs)
    for u, v in sorted(g.edges):
        if u in pair.members and v in pair.neighbors:
            arcs.append(Arc(supply_node(u), demand_node(v), UNBOUNDED))
        elif v in pair.members and u in pair.neighbors:
            arcs.append(Arc(supply_node(v), demand_node(u), UNBOUNDED))
    nodes = [SOURCE, SINK]
    nodes.extend(supply_node(u) for u in members)
    nodes.extend(demand_node(v) for v in nbrs)
    net = FlowNetwork(tuple(sorted(nodes)), tuple(arcs), g)
    result = _solve_pair_network(net, Fraction(total_weight(g, pair.members)), pair)
    fractions: dict[tuple[str, str], Fraction] = {}
    for u in members:
        for v in nbrs:
            f = result.flow.get((supply_node(u), demand_node(v)))
            if f:
                fractions[(u, v)] = f / g.weights[u]
                fractions[(v, u)] = pair.alpha * f / g.weights[v]
    return fractions


def _self_trade(g: WeightedGraph, pair: BottleneckPair) -> dict[tuple[str, str], Fraction]:
    """Ratio = 1: the pair trades within itself via its doubled copy.

    Every vertex here ends up with utility equal to its weight, so
    proportional response degenerates to x[u,v]*w_u = x[v,u]*w_v, i.e.
    the two copies of each edge must carry equal flow.  An arbitrary
    maximum flow need not be symmetric (a unit triangle can route a
    one-way rotation), but the network is mirror-symmetric and both
    sides saturate, so the mirror image of a maximum flow is again one,
    and so is their average.  Averaging restores the symmetry exactly.
    """
    sub = induced_subgraph(g, pair.members)
    net = build_alpha_network(sub, Fraction(1))
    result = _solve_pair_network(net, Fraction(total_weight(g, pair.members)), pair)
    fractions: dict[tuple[str, str], Fraction] = {}
    for u in sub.vertices:
        for v in sub.adjacency[u]:
            f = result.flow[(supply_node(u), demand_node(v))]
            mirrored = result.flow[(supply_node(v), demand_node(u))]
            symmetric = (f + mirrored) / 2
            if symmetric:
                fractions[(u, v)] = symmetric / g.weights[u]
    return fractions


def pair_allocation(g: WeightedGraph, pair: BottleneckPair) -> dict[tuple[str, str], Fraction]:
    """Traded fractions contributed by one pair; keys only within the pair."""
    if pair.alpha == 1:
        return _self_trade(g, pair)
    return _cross_trade(g, pair)


def bd_allocation(g: WeightedGraph, decomposition: Decomposition) -> Allocation:
    """Merged allocation over all pairs; edges between pairs trade nothing."""
    fractions: dict[tuple[str, str], Fraction] = {}
    for pair in decomposition.pairs:
        fractions.update(pair_allocation(g, pair))
    allocation = Allocation.build(g, fractions)
    for u in g.vertices:
        if allocation.sent(u) != 1:
            raise InvariantViolation(
                f"vertex {u} allocates {frac_str(allocation.sent(u))}, expected 1")
    return allocation


def equilibrium_prices(g: WeightedGraph,
                       decomposition: Decomposition) -> dict[str, Fraction]:
    """Supporting prices: ratio-scaled weight on B sides, plain weight on C."""
    prices: dict[str, Fraction] = {}
    for pair in decomposition.pairs:
        for u in pair.members:
            prices[u] = pair.alpha * g.weights[u]
        for v in pair.neighbors - pair.members:
            prices[v] = Fraction(g.weights[v])
    return prices


def utilities(g: WeightedGraph, allocation: Allocation) -> dict[str, Fraction]:
    """Received weight per vertex, recomputed directly from the allocation."""
    return {
        u: sum((allocation.fraction(v, u) * g.weights[v] for v in g.adjacency[u]),
               Fraction(0))
        for u in g.vertices
    }


def equilibrium_bundle(g: WeightedGraph,
                       decomposition: Decomposition | None = None) -> EquilibriumBundle:
    """Full pipeline: decompose (unless given), allocate, price, audit."""
    if decomposition is None:
        decomposition = bottleneck_decomposition(g)
    allocation = bd_allocation(g, decomposition)
    return EquilibriumBundle(
        allocation=allocation,
        prices=equilibrium_prices(g, decomposition),
        utilities=utilities(g, allocation),
        decomposition=decomposition,
    )


def allocation_json(allocation: Allocation) -> list[dict]:
    return [
        {"from": u, "to": v, "fraction": frac_str(x)}
        for (u, v), x in sorted(allocation.fractions.items())
    ]


def allocation_from_json(g: WeightedGraph, entries: list) -> Allocation:
    if not isinstance(entries, list):
        raise ValueError("allocation JSON must be an array of entries")
    fractions: dict[tuple[str, str], Fraction] = {}
    for item in entries:
        if not isinstance(item, dict) or not {"from", "to", "fraction"} <= set(item):
            raise ValueError(f"allocation entry needs from/to/fraction: {item!r}")
        u, v = item["from"], item["to"]
        if (u, v) in fractions:
            raise ValueError(f"duplicate allocation entry ({u}, {v})")
        fractions[(u, v)] = parse_frac(item["fraction"])
    return Allocation.build(g, fractions)


def prices_from_json(g: WeightedGraph, entries: dict) -> dict[str, Fraction]:
    if not isinstance(entries, dict):
        raise ValueError("prices JSON must map vertex name to rational")
    if set(entries) != g.vertex_set:
        raise ValueError("prices JSON must cover exactly the graph's vertices")
    prices = {v: parse_frac(text) for v, text in entries.items()}
    for v, p in prices.items():
        if p <= 0:
            raise ValueError(f"price of {v} must be positive, got {frac_str(p)}")
    return prices


def bundle_json(g: WeightedGraph, bundle: EquilibriumBundle) -> dict:
    payload = {
        "allocation": allocation_json(bundle.allocation),
        "prices": {v: frac_str(p) for v, p in sorted(bundle.prices.items())},
        "utilities": {v: frac_str(u) for v, u in sorted(bundle.utilities.items())},
    }
    if bundle.decomposition is not None:
        payload["pairs"] = decomposition_json(bundle.decomposition)
    return payload
