"""Exact max-flow and min-cut structure on two-sided copy networks.

Every graph vertex v appears twice: a supply copy ``L:v`` and a demand
copy ``R:v``.  The parametric network puts capacity alpha*w_v on the arc
(s, L:v), capacity w_v on (R:v, t), and unbounded capacity on both
(L:u, R:v) and (L:v, R:u) for every graph edge (u, v).  A finite s-t cut
then cannot separate a supply copy from the demand copies of its
neighbors, so finite cuts correspond exactly to vertex subsets B: the
source side is {s} plus the supply copies of B plus the demand copies of
N(B), and it costs alpha*(w(V) - w(B)) + w(N(B)).

The solver augments along shortest paths found breadth-first, so the
number of augmentations is bounded by a polynomial in the network size
alone, independent of capacity magnitudes; that is what makes exact
rational capacities safe.  Ties between shortest paths are broken by
lexicographic node order, which pins down every flow this package
produces.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .fmt import frac_str
from .graphs import InvariantViolation, WeightedGraph, neighborhood

UNBOUNDED = float("inf")

SOURCE = "s"
SINK = "t"


def supply_node(v: str) -> str:
    return "L:" + v


def demand_node(v: str) -> str:
    return "R:" + v


def node_origin(node: str) -> tuple[str, str] | None:
    """``(side, vertex)`` for copy nodes, ``None`` for the terminals."""
    if node.startswith("L:"):
        return "supply", node[2:]
    if node.startswith("R:"):
        return "demand", node[2:]
    return None


@dataclass(frozen=True)
class Arc:
    tail: str
    head: str
    capacity: Fraction | float  # nonnegative Fraction, or UNBOUNDED


@dataclass(frozen=True)
class FlowNetwork:
    """Directed s-t network over two-sided copies of a weighted graph."""

    nodes: tuple[str, ...]  # sorted; includes SOURCE and SINK
    arcs: tuple[Arc, ...]
    graph: WeightedGraph


@dataclass(frozen=True)
class FlowResult:
    """A maximum flow: per-arc values, total value, the solved network."""

    network: FlowNetwork
    flow: dict[tuple[str, str], Fraction]
    value: Fraction


def _two_sided(g: WeightedGraph, source_caps: dict[str, Fraction]) -> FlowNetwork:
    arcs = [Arc(SOURCE, supply_node(v), source_caps[v]) for v in g.vertices]
    arcs.extend(Arc(demand_node(v), SINK, Fraction(g.weights[v])) for v in g.vertices)
    for u, v in sorted(g.edges):
        arcs.append(Arc(supply_node(u), demand_node(v), UNBOUNDED))
        arcs.append(Arc(supply_node(v), demand_node(u), UNBOUNDED))
    nodes = [SOURCE, SINK]
    nodes.extend(supply_node(v) for v in g.vertices)
    nodes.extend(demand_node(v) for v in g.vertices)
    return FlowNetwork(tuple(sorted(nodes)), tuple(arcs), g)


def build_alpha_network(g: WeightedGraph, alpha: Fraction) -> FlowNetwork:
    """Parametric network: source capacities scaled by ``alpha``."""
    alpha = Fraction(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return _two_sided(g, {v: alpha * g.weights[v] for v in g.vertices})


def build_perturbed_network(g: WeightedGraph, alpha_star: Fraction,
                            epsilon: Fraction) -> FlowNetwork:
    """Parametric network with every source capacity nudged up by ``epsilon``.

    The perturbation makes larger corresponding sets strictly cheaper
    among cuts that tie at ``alpha_star``, so the minimum cut singles out
    the inclusion-maximal minimum-ratio set.
    """
    alpha_star = Fraction(alpha_star)
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return _two_sided(g, {v: alpha_star * g.weights[v] + epsilon for v in g.vertices})


def max_flow(net: FlowNetwork) -> FlowResult:
    """Maximum flow by shortest augmenting paths, exact arithmetic.

    Breadth-first search scans neighbors in lexicographic node order, so
    the returned flow (and everything derived from it) is deterministic.
    """
    index = {node: i for i, node in enumerate(net.nodes)}
    if SOURCE not in index or SINK not in index:
        raise ValueError("network lacks a source or sink node")
    s, t = index[SOURCE], index[SINK]
    n = len(net.nodes)

    # Paired residual arcs: entry 2i is arc i, entry 2i+1 its reverse.
    heads: list[int] = []
    residual: list[Fraction | float] = []
    positive: list[bool] = []  # residual[a] > 0, cached off the Fraction
    adjacency: list[list[int]] = [[] for _ in range(n)]
    zero = Fraction(0)
    for arc in net.arcs:
        u, v = index[arc.tail], index[arc.head]
        if arc.capacity != UNBOUNDED and arc.capacity < 0:
            raise ValueError(f"negative capacity on {arc.tail}->{arc.head}")
        adjacency[u].append(len(heads))
        heads.append(v)
        residual.append(arc.capacity)
        positive.append(arc.capacity > 0)
        adjacency[v].append(len(heads))
        heads.append(u)
        residual.append(zero)
        positive.append(False)
    for bucket in adjacency:
        # net.nodes is sorted, so index order is lexicographic order
        bucket.sort(key=lambda a: heads[a])

    value = zero
    parent = [-1] * n
    while True:
        for i in range(n):
            parent[i] = -1
        parent[s] = -2
        queue = deque([s])
        reached = False
        while queue and not reached:
            u = queue.popleft()
            for a in adjacency[u]:
                h = heads[a]
                if positive[a] and parent[h] == -1:
                    parent[h] = a
                    if h == t:
                        reached = True
                        break
                    queue.append(h)
        if not reached:
            break
        amount: Fraction | float = UNBOUNDED
        node = t
        while node != s:
            a = parent[node]
            if residual[a] < amount:
                amount = residual[a]
            node = heads[a ^ 1]
        if amount == UNBOUNDED:
            raise InvariantViolation("augmenting path with unbounded bottleneck")
        node = t
        while node != s:
            a = parent[node]
            residual[a] -= amount
            positive[a] = residual[a] > 0
            residual[a ^ 1] += amount
            positive[a ^ 1] = True
            node = heads[a ^ 1]
        value += amount

    flow = {}
    for i, arc in enumerate(net.arcs):
        flow[(arc.tail, arc.head)] = residual[2 * i + 1]
    return FlowResult(net, flow, value)


def _residual_reach(result: FlowResult, forward: bool) -> set[str]:
    """Nodes reachable from s along residual arcs (forward), or nodes that
    can reach t along residual arcs (not forward)."""
    net = result.network
    succ: dict[str, list[str]] = {node: [] for node in net.nodes}
    for arc in net.arcs:
        f = result.flow[(arc.tail, arc.head)]
        if arc.capacity == UNBOUNDED or arc.capacity - f > 0:
            a, b = (arc.tail, arc.head) if forward else (arc.head, arc.tail)
            succ[a].append(b)
        if f > 0:
            a, b = (arc.head, arc.tail) if forward else (arc.tail, arc.head)
            succ[a].append(b)
    start = SOURCE if forward else SINK
    seen = {start}
    stack = [start]
    while stack:
        for nxt in succ[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen


def min_cut_minimal(result: FlowResult) -> frozenset[str]:
    """Inclusion-minimal minimum cut: the residual-reachable side of s."""
    return frozenset(_residual_reach(result, forward=True))


def min_cut_maximal(result: FlowResult) -> frozenset[str]:
    """Inclusion-maximal minimum cut: everything that cannot reach t.

    This equals the union of the source sides of all minimum cuts, which
    is itself a minimum cut.
    """
    return frozenset(result.network.nodes) - _residual_reach(result, forward=False)


def cut_capacity(net: FlowNetwork, source_side: frozenset[str]) -> Fraction | float:
    """Total capacity of the arcs leaving ``source_side``."""
    cut = frozenset(source_side)
    total: Fraction | float = Fraction(0)
    for arc in net.arcs:
        if arc.tail in cut and arc.head not in cut:
            if arc.capacity == UNBOUNDED:
                return UNBOUNDED
            total += arc.capacity
    return total


def corresponding_set(net: FlowNetwork, source_side: frozenset[str]) -> frozenset[str]:
    """Vertex set B encoded by a finite cut {s} + supply(B) + demand(N(B)).

    Refuses cuts that are not of that shape; a minimum cut of a network
    built here always is, so a refusal signals a solver bug.
    """
    cut = frozenset(source_side)
    if SOURCE not in cut or SINK in cut:
        raise InvariantViolation("cut source side must contain s and exclude t")
    members: set[str] = set()
    demand_side: set[str] = set()
    for node in cut:
        origin = node_origin(node)
        if origin is None:
            continue
        side, vertex = origin
        (members if side == "supply" else demand_side).add(vertex)
    expected = set(neighborhood(net.graph, members)) if members else set()
    if demand_side != expected:
        raise InvariantViolation(
            "cut does not have corresponding-set shape: demand side "
            f"{sorted(demand_side)} != N({sorted(members)}) = {sorted(expected)}")
    return frozenset(members)


def verify_flow(result: FlowResult) -> None:
    """Raise unless capacities and conservation hold exactly everywhere."""
    net = result.network
    balance: dict[str, Fraction] = {node: Fraction(0) for node in net.nodes}
    for arc in net.arcs:
        f = result.flow[(arc.tail, arc.head)]
        if f < 0 or f > arc.capacity:
            raise InvariantViolation(
                f"flow {frac_str(f)} outside [0, {frac_str(arc.capacity)}] "
                f"on {arc.tail}->{arc.head}")
        balance[arc.tail] -= f
        balance[arc.head] += f
    for node in net.nodes:
        if node not in (SOURCE, SINK) and balance[node] != 0:
            raise InvariantViolation(f"conservation fails at {node}: {frac_str(balance[node])}")
    if balance[SOURCE] != -result.value or balance[SINK] != result.value:
        raise InvariantViolation("flow value disagrees with terminal balance")


def network_json(net: FlowNetwork) -> dict:
    return {
        "nodes": list(net.nodes),
        "arcs": [
            {"from": a.tail, "to": a.head, "capacity": frac_str(a.capacity)}
            for a in net.arcs
        ],
    }


def flow_json(result: FlowResult) -> dict:
    return {
        "value": frac_str(result.value),
        "flow": [
            {"from": u, "to": v, "flow": frac_str(f)}
            for (u, v), f in sorted(result.flow.items())
        ],
    }
