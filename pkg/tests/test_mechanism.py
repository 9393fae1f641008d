from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import connected_graphs
from fairexchange import (Allocation, bottleneck_decomposition, bd_allocation,
                          equilibrium_bundle, equilibrium_prices,
                          pair_allocation, utilities)
from fairexchange.mechanism import (allocation_from_json, allocation_json,
                                    prices_from_json)


class TestPairAllocation:
    def test_path_cross_pair(self, path12):
        d = bottleneck_decomposition(path12)
        assert pair_allocation(path12, d.pairs[0]) == {
            ("b", "a"): Fraction(1), ("a", "b"): Fraction(1)}

    def test_unit_edge_self_pair(self, unit_edge):
        d = bottleneck_decomposition(unit_edge)
        assert pair_allocation(unit_edge, d.pairs[0]) == {
            ("a", "b"): Fraction(1), ("b", "a"): Fraction(1)}

    def test_star_self_pair(self, star):
        d = bottleneck_decomposition(star)
        fractions = pair_allocation(star, d.pairs[0])
        for leaf in ("l1", "l2", "l3"):
            assert fractions[("c", leaf)] == Fraction(1, 3)
            assert fractions[(leaf, "c")] == Fraction(1)


class TestBdAllocation:
    def test_six_vertex_exact(self, six_vertex):
        d = bottleneck_decomposition(six_vertex)
        allocation = bd_allocation(six_vertex, d)
        one = Fraction(1)
        assert allocation.fractions == {
            ("v1", "v3"): one, ("v3", "v1"): one,
            ("v2", "v4"): one, ("v4", "v2"): one,
            ("v5", "v6"): one, ("v6", "v5"): one,
        }

    def test_trade_confined_to_pairs(self, six_vertex):
        # the v3-v5 and v4-v6 edges straddle the two pairs: no trade
        d = bottleneck_decomposition(six_vertex)
        allocation = bd_allocation(six_vertex, d)
        assert allocation.fraction("v3", "v5") == 0
        assert allocation.fraction("v6", "v4") == 0

    @given(connected_graphs())
    @settings(max_examples=60)
    def test_clearance_exact(self, g):
        allocation = bd_allocation(g, bottleneck_decomposition(g))
        for u in g.vertices:
            assert allocation.sent(u) == 1

    @given(connected_graphs())
    @settings(max_examples=60)
    def test_trade_confinement_property(self, g):
        d = bottleneck_decomposition(g)
        allocation = bd_allocation(g, d)
        for (u, v), x in allocation.fractions.items():
            assert x > 0
            pair_u, side_u = d.locate(u)
            pair_v, side_v = d.locate(v)
            assert pair_u is pair_v
            if pair_u.alpha < 1:
                assert side_u != side_v

    @given(connected_graphs(max_n=7))
    @settings(max_examples=50)
    def test_symmetric_value_inside_self_pair(self, g):
        """Within a ratio-1 block the two directions carry equal value."""
        d = bottleneck_decomposition(g)
        allocation = bd_allocation(g, d)
        last = d.pairs[-1]
        if last.alpha != 1:
            return
        for u in last.members:
            for v in last.members:
                if g.has_edge(u, v):
                    assert (allocation.fraction(u, v) * g.weights[u]
                            == allocation.fraction(v, u) * g.weights[v])


class TestPricesAndUtilities:
    def test_path_prices(self, path12):
        d = bottleneck_decomposition(path12)
        assert equilibrium_prices(path12, d) == {"a": 1, "b": 1}

    def test_six_vertex_prices(self, six_vertex):
        d = bottleneck_decomposition(six_vertex)
        assert equilibrium_prices(six_vertex, d) == {v: 1 for v in six_vertex.vertices}

    def test_path_utilities(self, path12):
        bundle = equilibrium_bundle(path12)
        assert bundle.utilities == {"a": 2, "b": 1}

    def test_star_utilities(self, star):
        bundle = equilibrium_bundle(star)
        assert bundle.utilities == {"c": 3, "l1": 1, "l2": 1, "l3": 1}

    @given(connected_graphs())
    @settings(max_examples=60)
    def test_closed_form_utilities(self, g):
        """Utility is ratio * weight on a bottleneck, weight / ratio opposite."""
        bundle = equilibrium_bundle(g)
        d = bundle.decomposition
        for v in g.vertices:
            pair, side = d.locate(v)
            if side == "B":
                assert bundle.utilities[v] == pair.alpha * g.weights[v]
            else:
                assert bundle.utilities[v] == Fraction(g.weights[v]) / pair.alpha

    @given(connected_graphs())
    @settings(max_examples=60)
    def test_budget_is_spent_exactly(self, g):
        bundle = equilibrium_bundle(g)
        for u in g.vertices:
            spend = sum(
                (bundle.allocation.fraction(v, u) * bundle.prices[v]
                 for v in g.adjacency[u]), Fraction(0))
            assert spend == bundle.prices[u]

    @given(connected_graphs())
    @settings(max_examples=60)
    def test_total_utility_is_total_weight(self, g):
        bundle = equilibrium_bundle(g)
        assert sum(bundle.utilities.values()) == sum(g.weights.values())


class TestAllocationType:
    def test_rejects_non_edges(self, path12):
        with pytest.raises(ValueError, match="non-edge"):
            Allocation.build(path12, {("a", "a"): Fraction(1)})

    def test_rejects_out_of_range(self, path12):
        with pytest.raises(ValueError, match="outside"):
            Allocation.build(path12, {("a", "b"): Fraction(3, 2)})

    def test_drops_explicit_zeros(self, path12):
        allocation = Allocation.build(
            path12, {("a", "b"): Fraction(0), ("b", "a"): Fraction(1)})
        assert ("a", "b") not in allocation.fractions
        assert allocation.fraction("a", "b") == 0


class TestJsonForms:
    def test_allocation_json_sorted(self, six_vertex):
        allocation = bd_allocation(six_vertex, bottleneck_decomposition(six_vertex))
        entries = allocation_json(allocation)
        keys = [(e["from"], e["to"]) for e in entries]
        assert keys == sorted(keys)
        assert all(set(e) == {"from", "to", "fraction"} for e in entries)

    @given(connected_graphs(max_n=6))
    @settings(max_examples=40)
    def test_roundtrip(self, g):
        allocation = bd_allocation(g, bottleneck_decomposition(g))
        rebuilt = allocation_from_json(g, allocation_json(allocation))
        assert rebuilt.fractions == allocation.fractions

    def test_from_json_rejects_duplicates(self, path12):
        entries = [
            {"from": "a", "to": "b", "fraction": "1/2"},
            {"from": "a", "to": "b", "fraction": "1/2"},
        ]
        with pytest.raises(ValueError, match="duplicate"):
            allocation_from_json(path12, entries)

    def test_from_json_rejects_junk(self, path12):
        with pytest.raises(ValueError, match="from/to/fraction"):
            allocation_from_json(path12, [{"from": "a"}])
        with pytest.raises(ValueError, match="array"):
            allocation_from_json(path12, {"a": 1})

    def test_prices_from_json(self, path12):
        prices = prices_from_json(path12, {"a": "1", "b": "1/2"})
        assert prices == {"a": 1, "b": Fraction(1, 2)}
        with pytest.raises(ValueError, match="exactly"):
            prices_from_json(path12, {"a": "1"})
        with pytest.raises(ValueError, match="positive"):
            prices_from_json(path12, {"a": "1", "b": "0"})
