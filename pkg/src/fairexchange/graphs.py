"""Vertex-weighted undirected graphs and the expansion-ratio primitives.

The text format is line oriented.  ``#`` starts a comment (anywhere in a
line), ``v NAME WEIGHT`` declares a vertex, ``e NAME NAME`` declares an
edge between previously declared vertices.  Names match ``[A-Za-z0-9_]+``
and weights are positive base-10 integers.  Top-level inputs must be
simple, connected, and have at least two vertices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

NAME_PATTERN = re.compile(r"[A-Za-z0-9_]+\Z")
_WEIGHT_PATTERN = re.compile(r"[0-9]+\Z")


class GraphFormatError(ValueError):
    """Malformed or semantically invalid graph input."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvariantViolation(RuntimeError):
    """An internal consistency check failed: a bug, not bad input."""


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph with positive integer vertex weights.

    ``vertices`` is lexicographically sorted and every edge is stored as an
    ordered pair ``(u, v)`` with ``u < v``.  Instances are immutable; use
    :meth:`build` to construct one from unnormalized input.
    """

    vertices: tuple[str, ...]
    weights: dict[str, int]
    edges: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, weights: Mapping[str, int],
              edges: Iterable[tuple[str, str]]) -> "WeightedGraph":
        canonical = frozenset((u, v) if u < v else (v, u) for u, v in edges)
        return cls(tuple(sorted(weights)), dict(weights), canonical)

    def __post_init__(self) -> None:
        if list(self.vertices) != sorted(self.weights):
            raise ValueError("vertex tuple must be the sorted weight keys")
        for v, w in self.weights.items():
            if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                raise ValueError(f"weight of {v!r} must be a positive integer, got {w!r}")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u!r}")
            if u > v:
                raise ValueError(f"edge ({u!r}, {v!r}) not stored in sorted order")
            if u not in self.weights or v not in self.weights:
                raise ValueError(f"edge ({u!r}, {v!r}) references an undeclared vertex")

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        nbrs: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {v: frozenset(members) for v, members in nbrs.items()}

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    def has_edge(self, u: str, v: str) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def degree(self, v: str) -> int:
        return len(self.adjacency[v])


def total_weight(g: WeightedGraph, members: Iterable[str]) -> int:
    """Sum of vertex weights over ``members`` (0 for the empty set)."""
    total = 0
    for v in members:
        weight = g.weights.get(v)
        if weight is None:
            raise ValueError(f"unknown vertex {v!r}")
        total += weight
    return total


def graph_weight(g: WeightedGraph) -> int:
    """Total weight of all vertices."""
    return sum(g.weights.values())


def neighborhood(g: WeightedGraph, members: Iterable[str]) -> frozenset[str]:
    """Union of the neighbor sets of ``members``; may intersect ``members``."""
    out: set[str] = set()
    for v in members:
        nbrs = g.adjacency.get(v)
        if nbrs is None:
            raise ValueError(f"unknown vertex {v!r}")
        out |= nbrs
    return frozenset(out)


def alpha_ratio(g: WeightedGraph, members: Iterable[str]) -> Fraction:
    """Expansion ratio w(N(S)) / w(S) of a nonempty vertex set S."""
    s = frozenset(members)
    if not s:
        raise ValueError("expansion ratio is undefined for the empty set")
    return Fraction(total_weight(g, neighborhood(g, s)), total_weight(g, s))


def induced_subgraph(g: WeightedGraph, keep: Iterable[str]) -> WeightedGraph:
    """Subgraph induced on ``keep``.

    The decomposition loop only ever induces subgraphs that keep every
    remaining vertex attached, so an isolated vertex in the result is an
    internal error, not a user error.
    """
    kept = frozenset(keep)
    if not kept:
        raise ValueError("cannot induce a subgraph on the empty set")
    missing = kept - g.vertex_set
    if missing:
        raise ValueError(f"unknown vertices: {sorted(missing)}")
    edges = frozenset(e for e in g.edges if e[0] in kept and e[1] in kept)
    sub = WeightedGraph.build({v: g.weights[v] for v in kept}, edges)
    isolated = [v for v in sub.vertices if not sub.adjacency[v]]
    if isolated:
        raise InvariantViolation(f"induced subgraph has isolated vertices: {isolated}")
    return sub


def is_connected(g: WeightedGraph) -> bool:
    if not g.vertices:
        return False
    seen = {g.vertices[0]}
    stack = [g.vertices[0]]
    while stack:
        for u in g.adjacency[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(g.vertices)


def parse_graph(text: str) -> WeightedGraph:
    """Parse the text format and enforce the top-level input contract."""
    weights: dict[str, int] = {}
    edges: set[tuple[str, str]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "v":
            if len(fields) != 3:
                raise GraphFormatError("expected 'v NAME WEIGHT'", lineno)
            name, weight_text = fields[1], fields[2]
            if not NAME_PATTERN.match(name):
                raise GraphFormatError(f"bad vertex name {name!r}", lineno)
            if name in weights:
                raise GraphFormatError(f"duplicate vertex {name!r}", lineno)
            if not _WEIGHT_PATTERN.match(weight_text) or int(weight_text) == 0:
                raise GraphFormatError(
                    f"weight must be a positive integer, got {weight_text!r}", lineno)
            weights[name] = int(weight_text)
        elif kind == "e":
            if len(fields) != 3:
                raise GraphFormatError("expected 'e NAME NAME'", lineno)
            u, v = fields[1], fields[2]
            for name in (u, v):
                if name not in weights:
                    raise GraphFormatError(f"unknown endpoint {name!r}", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at {u!r}", lineno)
            key = (u, v) if u < v else (v, u)
            if key in edges:
                raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
            edges.add(key)
        else:
            raise GraphFormatError(f"unknown directive {kind!r}", lineno)
    if len(weights) < 2:
        raise GraphFormatError("graph needs at least 2 vertices")
    g = WeightedGraph.build(weights, edges)
    if not is_connected(g):
        raise GraphFormatError("graph is not connected")
    return g


def serialize_graph(g: WeightedGraph) -> str:
    """Canonical text form: sorted vertex lines, then sorted edge lines."""
    lines = [f"v {v} {g.weights[v]}" for v in g.vertices]
    lines.extend(f"e {u} {v}" for u, v in sorted(g.edges))
    return "\n".join(lines) + "\n"
