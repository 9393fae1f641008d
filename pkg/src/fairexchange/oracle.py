"""Brute-force reference answers for small graphs, plus a seeded generator.

Subset enumeration is exponential and guarded by an explicit vertex
limit.  The brute path shares no code with the flow-based path beyond
the graph type itself, so agreement between the two is meaningful.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .decomposition import BottleneckPair, Decomposition, validate_decomposition
from .graphs import (InvariantViolation, WeightedGraph, induced_subgraph,
                     is_connected)

DEFAULT_LIMIT = 20


def _require_small(g: WeightedGraph, limit: int) -> None:
    if len(g.vertices) > limit:
        raise ValueError(
            f"brute force refused: {len(g.vertices)} vertices exceeds limit {limit}")
    if any(not g.adjacency[v] for v in g.vertices):
        raise ValueError("graph has isolated vertices")


def _subset_tables(g: WeightedGraph) -> tuple[list[str], list[int], list[int]]:
    """Weight and neighborhood of every vertex subset, indexed by bitmask."""
    verts = list(g.vertices)
    n = len(verts)
    position = {v: i for i, v in enumerate(verts)}
    nbr_bits = [0] * n
    for u, v in g.edges:
        nbr_bits[position[u]] |= 1 << position[v]
        nbr_bits[position[v]] |= 1 << position[u]
    weight = [g.weights[v] for v in verts]
    size = 1 << n
    mask_weight = [0] * size
    mask_nbrs = [0] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        mask_weight[mask] = mask_weight[rest] + weight[low]
        mask_nbrs[mask] = mask_nbrs[rest] | nbr_bits[low]
    return verts, mask_weight, mask_nbrs


def _best_ratio(mask_weight: list[int], mask_nbrs: list[int],
                size: int) -> tuple[int, int]:
    best_num, best_den = None, None
    for mask in range(1, size):
        num = mask_weight[mask_nbrs[mask]]
        den = mask_weight[mask]
        # integer cross-multiplication avoids a Fraction per subset
        if best_num is None or num * best_den < best_num * den:
            best_num, best_den = num, den
    return best_num, best_den


def brute_minimal_alpha(g: WeightedGraph, limit: int = DEFAULT_LIMIT) -> Fraction:
    """Minimum expansion ratio by enumerating every nonempty subset."""
    _require_small(g, limit)
    _, mask_weight, mask_nbrs = _subset_tables(g)
    num, den = _best_ratio(mask_weight, mask_nbrs, 1 << len(g.vertices))
    return Fraction(num, den)


def brute_maximal_bottleneck(g: WeightedGraph,
                             limit: int = DEFAULT_LIMIT) -> frozenset[str]:
    """Union of every minimum-ratio subset.

    The union is checked to attain the minimum itself; if it did not,
    maximality would be ill-defined and something is deeply wrong.
    """
    _require_small(g, limit)
    verts, mask_weight, mask_nbrs = _subset_tables(g)
    size = 1 << len(verts)
    num, den = _best_ratio(mask_weight, mask_nbrs, size)
    union = 0
    for mask in range(1, size):
        if mask_weight[mask_nbrs[mask]] * den == num * mask_weight[mask]:
            union |= mask
    if mask_weight[mask_nbrs[union]] * den != num * mask_weight[union]:
        raise InvariantViolation("union of minimum-ratio sets misses the minimum")
    return frozenset(verts[i] for i in range(len(verts)) if union >> i & 1)


def brute_decomposition(g: WeightedGraph, limit: int = DEFAULT_LIMIT) -> Decomposition:
    """Decomposition loop driven entirely by subset enumeration."""
    _require_small(g, limit)
    pairs: list[BottleneckPair] = []
    current = g
    index = 1
    while True:
        members = brute_maximal_bottleneck(current, limit)
        nbrs = frozenset().union(*(current.adjacency[v] for v in members))
        alpha = brute_minimal_alpha(current, limit)
        pairs.append(BottleneckPair(index, members, nbrs, alpha))
        remaining = current.vertex_set - members - nbrs
        if not remaining:
            break
        current = induced_subgraph(current, remaining)
        index += 1
    decomposition = Decomposition(g, tuple(pairs))
    validate_decomposition(decomposition)
    return decomposition


def brute_min_cut_value(g: WeightedGraph, alpha: Fraction,
                        epsilon: Fraction = Fraction(0),
                        limit: int = DEFAULT_LIMIT) -> Fraction:
    """Minimum closed-form cut cost over every corresponding set.

    Evaluates alpha*(w(V) - w(B)) + w(N(B)) + (n - |B|)*epsilon for every
    subset B including the empty one; the max-flow value of the matching
    network must equal this number.
    """
    _require_small(g, limit)
    _, mask_weight, mask_nbrs = _subset_tables(g)
    n = len(g.vertices)
    total = mask_weight[(1 << n) - 1]
    best = alpha * total + n * epsilon
    for mask in range(1, 1 << n):
        cost = (alpha * (total - mask_weight[mask]) + mask_weight[mask_nbrs[mask]]
                + (n - bin(mask).count("1")) * epsilon)
        if cost < best:
            best = cost
    return best


def random_connected_graph(n: int, max_weight: int, edge_density: Fraction,
                           seed: int) -> WeightedGraph:
    """Seeded random connected graph with uniform integer weights.

    A uniform spanning tree of the complete graph is drawn by a
    first-entry random walk, every non-tree pair is added independently
    with probability ``edge_density``, and weights are uniform in
    [1, max_weight].  Identical arguments give identical graphs.
    """
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if max_weight < 1:
        raise ValueError("max_weight must be at least 1")
    density = Fraction(edge_density)
    if not 0 < density <= 1:
        raise ValueError("edge_density must lie in (0, 1]")
    rng = random.Random(seed)
    width = len(str(n))
    names = [f"v{i:0{width}d}" for i in range(1, n + 1)]
    edges: set[tuple[int, int]] = set()
    visited = {0}
    current = 0
    while len(visited) < n:
        step = rng.randrange(n - 1)
        nxt = step + 1 if step >= current else step
        if nxt not in visited:
            visited.add(nxt)
            edges.add((min(current, nxt), max(current, nxt)))
        current = nxt
    threshold = float(density)
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in edges and rng.random() < threshold:
                edges.add((i, j))
    weights = {name: rng.randint(1, max_weight) for name in names}
    g = WeightedGraph.build(weights, {(names[i], names[j]) for i, j in edges})
    if not is_connected(g):
        raise InvariantViolation("generator produced a disconnected graph")
    return g
