import itertools
import random

import pytest

from indexcode import BitMatrix, SearchBudgetExceeded, minrank, optimal_code
from indexcode.gf2 import in_span, rank
from indexcode.instance import SideInfoDigraph


def digraph(n, edges):
    return SideInfoDigraph(vertices=tuple(range(1, n + 1)), edges=frozenset(edges))


def cycle(n):
    return digraph(n, [(i, i % n + 1) for i in range(1, n + 1)])


def clique(n):
    return digraph(n, [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j])


def brute_minrank(d):
    """Try every fitting matrix, smallest rank wins.  Tiny n only."""
    n = len(d.vertices)
    side = {v: sorted(j for (i, j) in d.edges if i == v) for v in d.vertices}
    best = n
    rows_choices = []
    for v in d.vertices:
        opts = []
        for picks in itertools.chain.from_iterable(
            itertools.combinations(side[v], r) for r in range(len(side[v]) + 1)
        ):
            mask = 1 << (v - 1)
            for u in picks:
                mask |= 1 << (u - 1)
            opts.append(mask)
        rows_choices.append(opts)
    for combo in itertools.product(*rows_choices):
        best = min(best, rank(BitMatrix.from_masks(list(combo), n)))
        if best == 1:
            return 1
    return best


class TestOptimalCode:
    def test_empty_digraph(self):
        sol = optimal_code(digraph(0, []))
        assert sol.rate == 0 and sol.generator.rows == 0

    def test_edgeless_needs_everything(self):
        sol = optimal_code(digraph(4, []))
        assert sol.rate == 4
        assert sol.generator == BitMatrix.identity(4)

    def test_cycle_saves_one(self):
        for n in range(2, 7):
            assert minrank(cycle(n)) == n - 1

    def test_clique_needs_one(self):
        for n in range(1, 6):
            sol = optimal_code(clique(n))
            assert sol.rate == 1
            assert sol.generator.rows == 1

    def test_generator_rank_equals_rate(self):
        rng = random.Random(3)
        for _ in range(40):
            n = rng.randint(1, 6)
            d = digraph(
                n,
                [
                    (i, j)
                    for i in range(1, n + 1)
                    for j in range(1, n + 1)
                    if i != j and rng.random() < 0.4
                ],
            )
            sol = optimal_code(d)
            assert rank(sol.generator) == sol.rate
            assert sol.fitting.rows == n

    def test_fitting_rows_decode(self):
        """Each fitting row must be e_v + side columns, inside the span."""
        rng = random.Random(5)
        for _ in range(40):
            n = rng.randint(1, 6)
            d = digraph(
                n,
                [
                    (i, j)
                    for i in range(1, n + 1)
                    for j in range(1, n + 1)
                    if i != j and rng.random() < 0.4
                ],
            )
            sol = optimal_code(d)
            side = {v: {j for (i, j) in d.edges if i == v} for v in d.vertices}
            for v, mask in zip(sol.vertices, sol.fitting.to_masks()):
                assert mask & (1 << (v - 1)), "diagonal must be set"
                extras = {b + 1 for b in range(n) if (mask >> b) & 1} - {v}
                assert extras <= side[v]
                assert in_span(
                    tuple((mask >> b) & 1 for b in range(n)), sol.generator
                )

    def test_matches_brute_force(self):
        rng = random.Random(9)
        for _ in range(25):
            n = rng.randint(1, 4)
            d = digraph(
                n,
                [
                    (i, j)
                    for i in range(1, n + 1)
                    for j in range(1, n + 1)
                    if i != j and rng.random() < 0.5
                ],
            )
            assert minrank(d) == brute_minrank(d)

    def test_extra_columns(self):
        sol = optimal_code(digraph(2, [(1, 2), (2, 1)]), num_columns=5)
        assert sol.generator.cols == 5
        assert sol.rate == 1

    def test_sparse_vertex_ids(self):
        d = SideInfoDigraph(vertices=(2, 5), edges=frozenset({(2, 5), (5, 2)}))
        sol = optimal_code(d)
        assert sol.rate == 1
        assert sol.generator.cols == 5
        assert sol.generator.to_masks()[0] == (1 << 1) | (1 << 4)


class TestBudget:
    def test_component_limit(self):
        with pytest.raises(SearchBudgetExceeded):
            minrank(cycle(5), component_limit=4)
        assert minrank(cycle(5), component_limit=5) == 4

    def test_too_many_columns(self):
        d = digraph(70, [])
        with pytest.raises(SearchBudgetExceeded):
            optimal_code(d)

    def test_dag_splits_into_singletons(self):
        # a long path has no cycles, so any component limit >= 1 works
        d = digraph(30, [(i, i + 1) for i in range(1, 30)])
        assert minrank(d, component_limit=1) == 30
