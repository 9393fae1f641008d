from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fairexchange import (brute_decomposition, brute_maximal_bottleneck,
                          brute_minimal_alpha, graph_weight, is_connected,
                          random_connected_graph, serialize_graph)
from fairexchange.oracle import brute_min_cut_value


class TestBruteForce:
    def test_path(self, path12):
        assert brute_minimal_alpha(path12) == Fraction(1, 2)
        assert brute_maximal_bottleneck(path12) == frozenset({"b"})

    def test_unit_edge(self, unit_edge):
        assert brute_minimal_alpha(unit_edge) == 1
        assert brute_maximal_bottleneck(unit_edge) == frozenset({"a", "b"})

    def test_star(self, star):
        assert brute_minimal_alpha(star) == 1
        assert brute_maximal_bottleneck(star) == frozenset(star.vertices)

    def test_six_vertex(self, six_vertex):
        assert brute_minimal_alpha(six_vertex) == Fraction(1, 2)
        assert brute_maximal_bottleneck(six_vertex) == frozenset({"v1", "v2"})
        d = brute_decomposition(six_vertex)
        assert [p.alpha for p in d.pairs] == [Fraction(1, 2), Fraction(1)]

    def test_limit_refusal(self, six_vertex):
        with pytest.raises(ValueError, match="exceeds limit"):
            brute_minimal_alpha(six_vertex, limit=5)
        with pytest.raises(ValueError, match="exceeds limit"):
            brute_decomposition(six_vertex, limit=5)

    def test_min_cut_value_examples(self, path12):
        assert brute_min_cut_value(path12, Fraction(1, 2)) == Fraction(3, 2)
        assert brute_min_cut_value(path12, Fraction(0)) == 0
        assert brute_min_cut_value(
            path12, Fraction(1, 2), epsilon=Fraction(1, 27)) == Fraction(83, 54)

    def test_minimum_is_at_most_the_empty_cut(self, six_vertex):
        alpha = Fraction(2, 3)
        assert brute_min_cut_value(six_vertex, alpha) \
            <= alpha * graph_weight(six_vertex)


class TestGenerator:
    def test_deterministic(self):
        a = random_connected_graph(9, 7, Fraction(3, 10), seed=42)
        b = random_connected_graph(9, 7, Fraction(3, 10), seed=42)
        assert a == b

    def test_seed_changes_output(self):
        texts = {serialize_graph(random_connected_graph(9, 7, Fraction(3, 10), seed=s))
                 for s in range(8)}
        assert len(texts) > 1

    def test_two_vertices_forced_edge(self):
        g = random_connected_graph(2, 5, Fraction(3, 10), seed=0)
        assert g.edges == frozenset({("v1", "v2")})

    def test_full_density_is_complete(self):
        g = random_connected_graph(6, 3, Fraction(1), seed=1)
        assert len(g.edges) == 6 * 5 // 2

    @given(st.integers(2, 12), st.integers(0, 1000))
    @settings(max_examples=50)
    def test_generated_graphs_are_wellformed(self, n, seed):
        g = random_connected_graph(n, 9, Fraction(3, 5), seed=seed)
        assert len(g.vertices) == n
        assert is_connected(g)
        assert all(1 <= w <= 9 for w in g.weights.values())
        assert all(v.startswith("v") for v in g.vertices)

    @pytest.mark.parametrize("kwargs", [
        dict(n=1, max_weight=5, edge_density=Fraction(1, 2), seed=0),
        dict(n=5, max_weight=0, edge_density=Fraction(1, 2), seed=0),
        dict(n=5, max_weight=5, edge_density=Fraction(0), seed=0),
        dict(n=5, max_weight=5, edge_density=Fraction(3, 2), seed=0),
    ])
    def test_rejects_bad_parameters(self, kwargs):
        with pytest.raises(ValueError):
            random_connected_graph(**kwargs)
