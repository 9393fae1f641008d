"""Independent verifiers for the promised properties of an allocation.

Everything here recomputes its inputs from first principles so it can
audit the construction code instead of trusting it: utilities come from
the allocation alone, and every failed condition carries a concrete
witness naming the offending vertex, edge, or level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fmt import frac_str
from .graphs import WeightedGraph
from .mechanism import Allocation, EquilibriumBundle, utilities


@dataclass(frozen=True)
class ConditionResult:
    name: str
    holds: bool
    witness: str | None = None


@dataclass(frozen=True)
class FairnessReport:
    passed: bool
    conditions: tuple[ConditionResult, ...]

    @classmethod
    def collect(cls, conditions) -> "FairnessReport":
        conditions = tuple(conditions)
        return cls(all(c.holds for c in conditions), conditions)


def report_json(report: FairnessReport) -> dict:
    return {
        "passed": report.passed,
        "conditions": [
            {"name": c.name, "holds": c.holds, "witness": c.witness}
            for c in report.conditions
        ],
    }


def check_market_equilibrium(g: WeightedGraph,
                             bundle: EquilibriumBundle) -> FairnessReport:
    """Market clearance, budget feasibility, and individual optimality.

    With linear preferences the individually optimal outcome has a closed
    form: spending the whole budget on neighbors maximizing received
    weight per unit price yields utility p_u * max over neighbors of
    w_v / p_v.  Optimality additionally requires every positive purchase
    to come from a neighbor attaining that maximum.

    Prices must be positive; non-positive prices are rejected as invalid
    input rather than reported as a failed condition.
    """
    allocation = bundle.allocation
    prices = bundle.prices
    if set(prices) != g.vertex_set:
        raise ValueError("prices must cover exactly the graph's vertices")
    for v, p in prices.items():
        if p <= 0:
            raise ValueError(f"price of {v} must be positive, got {frac_str(p)}")
    received = utilities(g, allocation)
    clearance = budget = optimality = None
    for u in g.vertices:  # lexicographic order, first violation wins
        sent = allocation.sent(u)
        if clearance is None and sent != 1:
            clearance = f"vertex {u} allocates {frac_str(sent)}, expected 1"
        spend = sum((allocation.fraction(v, u) * prices[v] for v in g.adjacency[u]),
                    Fraction(0))
        if budget is None and spend > prices[u]:
            budget = (f"vertex {u} spends {frac_str(spend)} over its budget "
                      f"{frac_str(prices[u])}")
        if optimality is None:
            best = max(Fraction(g.weights[v]) / prices[v] for v in g.adjacency[u])
            if received[u] != prices[u] * best:
                optimality = (f"vertex {u} gets {frac_str(received[u])}, optimum is "
                              f"{frac_str(prices[u] * best)}")
            else:
                for v in sorted(g.adjacency[u]):
                    if (allocation.fraction(v, u) > 0
                            and Fraction(g.weights[v]) / prices[v] != best):
                        optimality = f"vertex {u} buys from suboptimal neighbor {v}"
                        break
    return FairnessReport.collect([
        ConditionResult("market_clearance", clearance is None, clearance),
        ConditionResult("budget_constraint", budget is None, budget),
        ConditionResult("individual_optimality", optimality is None, optimality),
    ])


def check_proportional_response(g: WeightedGraph,
                                allocation: Allocation) -> FairnessReport:
    """Each vertex splits its outflow in proportion to value received.

    For every ordered adjacent pair with either direction active,
    x[u, v] must equal x[v, u] * w_v / U_u.  A vertex that sends while
    receiving nothing makes its share undefined; that is reported as a
    separate degenerate condition.
    """
    received = utilities(g, allocation)
    witness = degenerate = None
    for u in g.vertices:
        for v in sorted(g.adjacency[u]):
            x_out = allocation.fraction(u, v)
            x_in = allocation.fraction(v, u)
            if not x_out and not x_in:
                continue
            if received[u] == 0:
                if x_out and degenerate is None:
                    degenerate = f"vertex {u} sends to {v} but receives nothing"
                continue
            expected = x_in * g.weights[v] / received[u]
            if witness is None and x_out != expected:
                witness = (f"x[{u},{v}] = {frac_str(x_out)}, proportionality "
                           f"requires {frac_str(expected)}")
    return FairnessReport.collect([
        ConditionResult("proportional_response", witness is None, witness),
        ConditionResult("no_unrequited_sending", degenerate is None, degenerate),
    ])


@dataclass(frozen=True)
class RatioLevels:
    """Exchange ratios (utility per unit of own weight) grouped by value."""

    beta: dict[str, Fraction]
    levels: tuple[Fraction, ...]  # strictly increasing
    classes: tuple[frozenset[str], ...]  # classes[i] lives at levels[i]


def exchange_ratio_levels(g: WeightedGraph, allocation: Allocation) -> RatioLevels:
    """Group vertices by utility-to-weight ratio.

    Requires market clearance; ratios of a non-clearing allocation are
    not comparable, so that is an error rather than a report.
    """
    received = utilities(g, allocation)
    for u in g.vertices:
        sent = allocation.sent(u)
        if sent != 1:
            raise ValueError(
                f"market clearance fails at {u}: allocates {frac_str(sent)}")
    beta = {u: received[u] / g.weights[u] for u in g.vertices}
    levels = tuple(sorted(set(beta.values())))
    classes = tuple(
        frozenset(u for u in g.vertices if beta[u] == level) for level in levels)
    return RatioLevels(beta, levels, classes)


def receiving_set(g: WeightedGraph, allocation: Allocation,
                  senders: frozenset[str]) -> frozenset[str]:
    """Vertices getting a positive fraction from some member of ``senders``."""
    out: set[str] = set()
    for u in senders:
        for v in g.adjacency[u]:
            if allocation.fraction(u, v) > 0:
                out.add(v)
    return frozenset(out)


def check_lex_optimal(g: WeightedGraph, allocation: Allocation) -> FairnessReport:
    """Level-pairing characterization of lexicographic optimality.

    For exchange-ratio levels l_1 < ... < l_M with classes L_1 ... L_M,
    and every i up to floor(M/2): L_i is independent, members of L_i
    send exactly to L_{M-i+1}, the paired levels multiply to 1, and the
    total utility of L_i equals the total weight of L_{M-i+1}.  A single
    level is optimal exactly when it equals 1.
    """
    levels = exchange_ratio_levels(g, allocation)
    received = utilities(g, allocation)
    m = len(levels.levels)
    if m == 1:
        level = levels.levels[0]
        witness = None if level == 1 else f"uniform exchange ratio {frac_str(level)} != 1"
        return FairnessReport.collect(
            [ConditionResult("uniform_level_is_one", level == 1, witness)])
    independence = receivers = products = totals = None
    for i in range(1, m // 2 + 1):
        low = levels.classes[i - 1]
        high = levels.classes[m - i]
        if independence is None:
            edge = next((e for e in sorted(g.edges)
                         if e[0] in low and e[1] in low), None)
            if edge is not None:
                independence = f"level {i}: edge {edge[0]}-{edge[1]} inside the class"
        if receivers is None:
            out = receiving_set(g, allocation, low)
            if out != high:
                receivers = (f"level {i}: receivers {sorted(out)} != opposite "
                             f"class {sorted(high)}")
        if products is None:
            product = levels.levels[i - 1] * levels.levels[m - i]
            if product != 1:
                products = (f"level {i}: {frac_str(levels.levels[i - 1])} * "
                            f"{frac_str(levels.levels[m - i])} = {frac_str(product)} != 1")
        if totals is None:
            got = sum((received[u] for u in low), Fraction(0))
            opposite_weight = sum(g.weights[u] for u in high)
            if got != opposite_weight:
                totals = (f"level {i}: class utility {frac_str(got)} != opposite "
                          f"class weight {opposite_weight}")
    return FairnessReport.collect([
        ConditionResult("class_independence", independence is None, independence),
        ConditionResult("class_receivers", receivers is None, receivers),
        ConditionResult("level_products", products is None, products),
        ConditionResult("class_totals", totals is None, totals),
    ])
