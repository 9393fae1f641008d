"""Bottleneck extraction: minimal expansion ratio, maximal bottleneck,
and the full decomposition loop.

Phase 1 binary-searches the parameter of the two-sided network.  For a
probe value ``alpha`` the minimum cut costs
``alpha*w(V) + w(B)*(ratio(B) - alpha)`` where B is its corresponding
set, so comparing the max-flow value against ``alpha*w(V)`` tells which
side of the optimum the probe lies on:

* value < alpha*w(V): some set beats alpha.  The witness B satisfies
  ratio(B) < alpha, so the upper bound shrinks to ratio(B), a ratio that
  is actually achieved.
* value = alpha*w(V), maximal witness nonempty: ratio(B) = alpha and no
  set does better, so alpha is the optimum exactly.
* value = alpha*w(V), maximal witness empty: every nonempty set costs
  strictly more, so alpha is below the optimum.

Distinct ratios of weight sums bounded by W = w(V) differ by more than
1/W^2, so once the bracket is shorter than that, the achieved upper end
is the minimum.  Phase 2 re-solves once with every source capacity
nudged up by 1/W^3: among minimum-ratio sets the perturbed cut cost
strictly falls as the set grows, which makes the unique inclusion-
maximal minimum-ratio set the unique minimum cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .flow import (build_alpha_network, build_perturbed_network,
                   corresponding_set, max_flow, min_cut_maximal)
from .fmt import frac_str
from .graphs import (InvariantViolation, WeightedGraph, alpha_ratio,
                     graph_weight, induced_subgraph, neighborhood,
                     total_weight)


@dataclass(frozen=True)
class BottleneckPair:
    """One extraction step: a maximal bottleneck B and its neighbor set C."""

    index: int  # 1-based position in the decomposition
    members: frozenset[str]
    neighbors: frozenset[str]
    alpha: Fraction

    @property
    def block(self) -> frozenset[str]:
        return self.members | self.neighbors


@dataclass(frozen=True)
class Decomposition:
    """Ordered bottleneck pairs partitioning the graph's vertices."""

    graph: WeightedGraph
    pairs: tuple[BottleneckPair, ...]

    @property
    def alphas(self) -> tuple[Fraction, ...]:
        return tuple(p.alpha for p in self.pairs)

    def locate(self, vertex: str) -> tuple[BottleneckPair, str]:
        """Owning pair and side ('B' or 'C'); 'B' wins when B == C."""
        for pair in self.pairs:
            if vertex in pair.members:
                return pair, "B"
            if vertex in pair.neighbors:
                return pair, "C"
        raise ValueError(f"vertex {vertex!r} not covered by the decomposition")


class AlphaSearch(NamedTuple):
    alpha_star: Fraction
    witness: frozenset[str]
    iterations: int


def search_iteration_bound(g: WeightedGraph) -> int:
    """Bisection steps needed to shrink (0, 1] below the ratio spacing.

    Ratios of weight sums bounded by W live on a grid with gaps larger
    than 1/W^2, so ceil(log2(2 * W^2)) halvings always suffice.
    """
    m = graph_weight(g) ** 2
    return (2 * m - 1).bit_length()


def minimal_alpha_ratio(g: WeightedGraph) -> AlphaSearch:
    """Minimum expansion ratio over all nonempty sets, with a witness set.

    The bracket invariant is low < optimum <= high, with ``witness``
    achieving ratio exactly ``high`` (``None`` stands for the full vertex
    set, which always achieves ratio 1).
    """
    if any(not g.adjacency[v] for v in g.vertices):
        raise ValueError("graph has isolated vertices")
    total = graph_weight(g)
    spacing = Fraction(1, total * total)
    low = Fraction(0)
    high = Fraction(1)
    witness: frozenset[str] | None = None
    iterations = 0
    bound = search_iteration_bound(g)
    while high - low >= spacing:
        iterations += 1
        if iterations > bound:
            raise InvariantViolation("ratio search exceeded its iteration bound")
        alpha = (low + high) / 2
        result = max_flow(build_alpha_network(g, alpha))
        candidate = corresponding_set(result.network, min_cut_maximal(result))
        target = alpha * total
        if result.value < target:
            if not candidate:
                raise InvariantViolation("cut cheaper than alpha*w(V) with empty witness")
            achieved = alpha_ratio(g, candidate)
            if not achieved < alpha:
                raise InvariantViolation(
                    f"witness ratio {frac_str(achieved)} not below probe {frac_str(alpha)}")
            high = achieved
            witness = candidate
        elif result.value == target and candidate:
            achieved = alpha_ratio(g, candidate)
            if achieved != alpha:
                raise InvariantViolation(
                    f"tight cut witness has ratio {frac_str(achieved)} != {frac_str(alpha)}")
            return AlphaSearch(alpha, candidate, iterations)
        elif result.value == target:
            low = alpha
        else:
            raise InvariantViolation("max flow exceeded the all-sources cut capacity")
    if witness is None:
        witness = g.vertex_set
    if alpha_ratio(g, witness) != high:
        raise InvariantViolation("ratio search ended with a stale witness")
    return AlphaSearch(high, witness, iterations)


def maximal_bottleneck(g: WeightedGraph, alpha_star: Fraction) -> frozenset[str]:
    """Inclusion-maximal set achieving the minimal ratio ``alpha_star``.

    Solves the perturbed network once; its minimum cut is unique and its
    corresponding set is the union of all minimum-ratio sets.
    """
    epsilon = Fraction(1, graph_weight(g) ** 3)
    result = max_flow(build_perturbed_network(g, alpha_star, epsilon))
    bottleneck = corresponding_set(result.network, min_cut_maximal(result))
    if not bottleneck:
        raise InvariantViolation("perturbed network yielded an empty bottleneck")
    achieved = alpha_ratio(g, bottleneck)
    if achieved != alpha_star:
        raise InvariantViolation(
            f"bottleneck ratio {frac_str(achieved)} != optimum {frac_str(alpha_star)}")
    return bottleneck


def bottleneck_decomposition(g: WeightedGraph) -> Decomposition:
    """Repeatedly strip the maximal bottleneck pair until nothing remains."""
    pairs: list[BottleneckPair] = []
    current = g
    index = 1
    while True:
        search = minimal_alpha_ratio(current)
        members = maximal_bottleneck(current, search.alpha_star)
        nbrs = neighborhood(current, members)
        pairs.append(BottleneckPair(index, members, nbrs, search.alpha_star))
        remaining = current.vertex_set - members - nbrs
        if not remaining:
            break
        current = induced_subgraph(current, remaining)
        index += 1
    decomposition = Decomposition(g, tuple(pairs))
    validate_decomposition(decomposition)
    return decomposition


def validate_decomposition(d: Decomposition) -> None:
    """Check the structural facts every decomposition must satisfy:
    1-based consecutive indices, strictly increasing ratios in (0, 1],
    ratio 1 only at a final self-paired step, bottlenecks independent and
    disjoint from their neighbor sets below ratio 1, pairwise-disjoint
    blocks covering every vertex, and alpha = w(C)/w(B) throughout.
    """
    g = d.graph
    if not d.pairs:
        raise InvariantViolation("decomposition has no pairs")
    covered: set[str] = set()
    previous = Fraction(0)
    for position, pair in enumerate(d.pairs, start=1):
        where = f"pair {position}"
        if pair.index != position:
            raise InvariantViolation(f"{where}: index {pair.index} out of order")
        if not pair.members:
            raise InvariantViolation(f"{where}: empty bottleneck")
        if pair.alpha != Fraction(total_weight(g, pair.neighbors),
                                  total_weight(g, pair.members)):
            raise InvariantViolation(f"{where}: alpha != w(C)/w(B)")
        if not previous < pair.alpha:
            raise InvariantViolation(f"{where}: ratios must strictly increase")
        previous = pair.alpha
        if pair.alpha > 1:
            raise InvariantViolation(f"{where}: ratio above 1")
        if pair.alpha == 1:
            if position != len(d.pairs):
                raise InvariantViolation(f"{where}: ratio 1 before the final pair")
            if pair.members != pair.neighbors:
                raise InvariantViolation(f"{where}: ratio-1 pair must be self-paired")
        else:
            if pair.members & pair.neighbors:
                raise InvariantViolation(f"{where}: bottleneck meets its neighbor set")
            for u, v in g.edges:
                if u in pair.members and v in pair.members:
                    raise InvariantViolation(f"{where}: bottleneck contains edge {u}-{v}")
        if pair.block & covered:
            raise InvariantViolation(f"{where}: overlaps an earlier pair")
        covered |= pair.block
    if covered != g.vertex_set:
        raise InvariantViolation("pairs do not cover every vertex")


def decomposition_json(d: Decomposition) -> list[dict]:
    return [
        {
            "index": p.index,
            "alpha": frac_str(p.alpha),
            "B": sorted(p.members),
            "C": sorted(p.neighbors),
        }
        for p in d.pairs
    ]
