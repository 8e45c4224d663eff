import itertools
from functools import lru_cache

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import chordal_graphs, complete, cycle, dismantlable_graphs, path, star, trees, wheel5
from localcert.classes import (
    EliminationOrdering,
    OrderingKind,
    find_dismantling_ordering,
    find_simplicial_ordering,
    gen_chordal,
    gen_connected,
    gen_dismantlable,
    gen_tree,
    is_k4_free,
    is_tree,
)
from localcert.errors import IndexOutOfRange
from localcert.graph import build_graph


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def dismantlable_by_search(g):
    """Backtracking over every removal choice; no reliance on greedy order-insensitivity."""
    adj = [set(g.neighbors(v)) for v in range(g.n)]

    @lru_cache(maxsize=None)
    def solve(remaining):
        if len(remaining) == 1:
            return True
        for v in remaining:
            closed_v = (adj[v] & remaining) | {v}
            for u in closed_v - {v}:
                if closed_v <= (adj[u] | {u}):
                    if solve(remaining - {v}):
                        return True
                    break
        return False

    return solve(frozenset(range(g.n)))


def k4_free_by_quadruples(g):
    h = to_nx(g)
    return not any(
        all(h.has_edge(a, b) for a, b in itertools.combinations(q, 2))
        for q in itertools.combinations(range(g.n), 4)
    )


def test_tree_is_chordal():
    assert find_simplicial_ordering(gen_tree(12, 3)) is not None


def test_c4_not_chordal_not_dismantlable():
    assert find_simplicial_ordering(cycle(4)) is None
    assert find_dismantling_ordering(cycle(4)) is None


def test_k4_every_vertex_simplicial():
    ordering = find_simplicial_ordering(complete(4))
    assert ordering.order == (0, 1, 2, 3)


def test_w5_dismantlable_hub_dominates_rim():
    g = wheel5()
    hub = 5
    for v in range(5):
        assert g.closed_neighborhood(v) <= g.closed_neighborhood(hub)
    ordering = find_dismantling_ordering(g)
    assert ordering is not None and ordering.verify(g)
    assert find_simplicial_ordering(g) is None


def test_k4_free_examples():
    assert not is_k4_free(complete(4))
    assert is_k4_free(wheel5())
    assert is_k4_free(gen_tree(20, 1))


def test_dismantling_order_reads_from_the_root():
    ordering = find_dismantling_ordering(path(3))
    assert ordering.kind is OrderingKind.DISMANTLING
    assert ordering.witness[ordering.order[0]] is None
    assert ordering.elimination_sequence() == ordering.order[::-1]


def test_verify_rejects_bad_orderings():
    g = cycle(4)
    assert not EliminationOrdering((0, 1, 2, 3), OrderingKind.SIMPLICIAL).verify(g)
    assert not EliminationOrdering((0, 1, 2), OrderingKind.SIMPLICIAL).verify(path(4))
    p = path(3)
    assert EliminationOrdering((1, 0, 2), OrderingKind.DISMANTLING, (1, None, 1)).verify(p)
    assert not EliminationOrdering((1, 0, 2), OrderingKind.DISMANTLING, (2, None, 1)).verify(p)


@given(st.integers(1, 7), st.integers(0, 2**16), st.floats(0.0, 1.0))
def test_recognizers_match_independent_oracles(n, seed, p):
    g = gen_connected(n, int(p * n * (n - 1) / 2), seed)
    h = to_nx(g)
    simplicial = find_simplicial_ordering(g)
    assert (simplicial is not None) == nx.is_chordal(h)
    if simplicial is not None:
        assert simplicial.verify(g)
    dismantling = find_dismantling_ordering(g)
    assert (dismantling is not None) == dismantlable_by_search(g)
    if dismantling is not None:
        assert dismantling.verify(g)
    assert is_k4_free(g) == k4_free_by_quadruples(g)


def test_generator_small_cases():
    assert gen_tree(1, 0).n == 1
    assert gen_tree(2, 0).m == 1
    k3 = gen_chordal(3, 1, 5)
    assert k3.m == 3
    assert gen_dismantlable(2, True, 0).m == 1
    k4 = gen_dismantlable(4, False, 0, density=1.0)
    assert k4.m == 6 and find_dismantling_ordering(k4) is not None


@pytest.mark.parametrize("gen", [lambda: gen_tree(0, 1), lambda: gen_chordal(0, 0, 1),
                                 lambda: gen_dismantlable(0, True, 1)])
def test_generators_reject_empty(gen):
    with pytest.raises(IndexOutOfRange):
        gen()


def test_gen_tree_seed_determinism():
    a, b = gen_tree(10, 7), gen_tree(10, 7)
    assert a.edges == b.edges and a.m == 9 and is_tree(a)
    assert nx.is_tree(to_nx(a))


@given(trees(max_n=15))
def test_trees_are_chordal(g):
    assert is_tree(g) and nx.is_tree(to_nx(g))
    assert find_simplicial_ordering(g) is not None


@given(chordal_graphs(max_n=15))
def test_chordal_round_trip_and_inclusion(g):
    assert nx.is_chordal(to_nx(g))
    assert find_simplicial_ordering(g).verify(g)
    assert find_dismantling_ordering(g).verify(g)


@given(dismantlable_graphs(max_n=15))
def test_dismantlable_round_trip(g):
    assert find_dismantling_ordering(g).verify(g)


@given(dismantlable_graphs(max_n=15, k4_free=True))
def test_k4_free_flag_honored(g):
    assert is_k4_free(g)


def test_chordal_edge_budget():
    for seed in range(30):
        g = gen_chordal(8, 5, seed)
        assert g.m <= 7 + 5


def test_dismantlable_generator_reaches_non_chordal_graphs():
    graphs = [gen_dismantlable(8, True, s) for s in range(200)]
    assert any(find_simplicial_ordering(g) is None for g in graphs)


def test_star_is_tree():
    assert is_tree(star(4))
    assert build_graph([(0, 1)]).m == 1
