import random

import pytest

from indexcode import (
    build_digraph,
    interaction_digraph,
    minrank,
    partition,
    reduce_noncycle_edges,
    scc,
    topological_order,
    two_cycle,
)
from indexcode.instance import SideInfoDigraph
from conftest import make_instance


P1, P2, P12 = (1,), (2,), (1, 2)


def digraph(n, edges):
    return SideInfoDigraph(vertices=tuple(range(1, n + 1)), edges=frozenset(edges))


class TestScc:
    def test_single_cycle_is_one_component(self):
        comps = scc([1, 2, 3], [(1, 2), (2, 3), (3, 1)])
        assert comps == [frozenset({1, 2, 3})]

    def test_dag_gives_singletons_in_topological_order(self):
        comps = scc([1, 2, 3], [(3, 2), (2, 1)])
        assert comps == [frozenset({3}), frozenset({2}), frozenset({1})]

    def test_two_components_ordered(self):
        # cycle {1,2} feeds cycle {3,4}
        comps = scc([1, 2, 3, 4], [(1, 2), (2, 1), (2, 3), (3, 4), (4, 3)])
        assert comps == [frozenset({1, 2}), frozenset({3, 4})]

    def test_empty(self):
        assert scc([], []) == []

    def test_random_against_edge_contraction(self):
        rng = random.Random(7)
        for _ in range(50):
            n = rng.randint(1, 8)
            edges = [
                (i, j)
                for i in range(1, n + 1)
                for j in range(1, n + 1)
                if i != j and rng.random() < 0.3
            ]
            comps = scc(range(1, n + 1), edges)
            # partition property
            assert sorted(v for c in comps for v in c) == list(range(1, n + 1))
            # no edge from a later component to an earlier one
            pos = {v: idx for idx, c in enumerate(comps) for v in c}
            assert all(pos[a] <= pos[b] for a, b in edges)
            # mutual reachability within a component
            reach = {v: {v} for v in range(1, n + 1)}
            changed = True
            while changed:
                changed = False
                for a, b in edges:
                    new = reach[b] - reach[a]
                    if new:
                        reach[a] |= new
                        changed = True
            for c in comps:
                for u in c:
                    for v in c:
                        assert v in reach[u]


class TestTopologicalOrder:
    def test_two_cycle_returns_none(self):
        assert topological_order([1, 2], [(1, 2), (2, 1)]) is None

    def test_dag_order_respects_edges(self):
        order = topological_order([1, 2, 3, 4], [(4, 2), (2, 1), (3, 1)])
        pos = {v: i for i, v in enumerate(order)}
        assert pos[4] < pos[2] < pos[1] and pos[3] < pos[1]

    def test_deterministic_min_first(self):
        assert topological_order([3, 1, 2], []) == [1, 2, 3]


class TestReduceNoncycleEdges:
    def test_pure_dag_loses_everything(self):
        d = digraph(3, [(1, 2), (2, 3)])
        assert reduce_noncycle_edges(d).edges == frozenset()

    def test_cycle_edges_survive(self):
        d = digraph(4, [(1, 2), (2, 1), (2, 3), (3, 4)])
        assert reduce_noncycle_edges(d).edges == frozenset({(1, 2), (2, 1)})

    def test_idempotent(self):
        d = digraph(5, [(1, 2), (2, 3), (3, 1), (3, 4), (4, 5)])
        once = reduce_noncycle_edges(d)
        assert reduce_noncycle_edges(once) == once

    def test_preserves_minrank(self):
        rng = random.Random(11)
        for _ in range(30):
            n = rng.randint(1, 5)
            d = digraph(
                n,
                [
                    (i, j)
                    for i in range(1, n + 1)
                    for j in range(1, n + 1)
                    if i != j and rng.random() < 0.4
                ],
            )
            assert minrank(d) == minrank(reduce_noncycle_edges(d))


class TestInteractionDigraph:
    def test_example1_edges_and_participation(self, example1):
        d = build_digraph(example1)
        h = interaction_digraph(d, partition(example1))
        assert h.vertices == (P1, P2, P12)
        assert h.edges == frozenset({(P1, P2), (P2, P12), (P12, P1), (P1, P12)})
        flags = {e: h.is_fully_participated(*e) for e in sorted(h.edges)}
        assert flags == {
            (P1, P2): False,
            (P1, P12): False,
            (P2, P12): False,
            (P12, P1): True,
        }
        assert h.out_degree(P1) == 2
        assert not h.is_fully_participated(P2, P1)  # absent edge

    def test_within_group_edges_ignored(self):
        v = make_instance(4, [{1, 2}, {3, 4}], {1: {2}, 2: {1}, 3: {4}, 4: {3}})
        h = interaction_digraph(build_digraph(v), partition(v))
        assert h.edges == frozenset()

    def test_full_participation_requires_every_pair(self):
        # group (1,) = {1, 2}; only receiver 1 sees message 3
        v = make_instance(3, [{1, 2}, {3}], {1: {3}, 2: set(), 3: set()})
        h = interaction_digraph(build_digraph(v), partition(v))
        assert h.has_edge(P1, P2)
        assert not h.is_fully_participated(P1, P2)
        # both receivers see it: fully participated
        v2 = make_instance(3, [{1, 2}, {3}], {1: {3}, 2: {3}, 3: set()})
        h2 = interaction_digraph(build_digraph(v2), partition(v2))
        assert h2.is_fully_participated(P1, P2)


class TestTwoCycle:
    def test_two_cycle(self, example1):
        h = interaction_digraph(build_digraph(example1), partition(example1))
        assert two_cycle(h, P1, P12)
        assert two_cycle(h, P12, P1)
        assert not two_cycle(h, P2, P12)
        assert not two_cycle(h, P1, P2)
