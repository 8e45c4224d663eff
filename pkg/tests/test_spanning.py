import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete, cycle, dismantlable_graphs, path, wheel5
from localcert.classes import gen_connected
from localcert.errors import IndexOutOfRange, MalformedCertificate, NoEligibleParent
from localcert.graph import extract_view
from localcert.schemes import SchemeId, verify_global
from localcert.spanning import (
    RandomTie,
    bfs_distances,
    check_st_local,
    construct_st_cert,
    derive_tree,
    eligibility_acyclic,
    eligibility_arcs,
    highest_port,
    is_spanning_tree,
    lowest_port,
    root_labels,
    root_of,
    tie_battery,
)


def check_at(g, values, root, v):
    return check_st_local(extract_view(g, values, v, root_labels(g.n, root)))


def test_root_labels_roundtrip():
    assert root_labels(3, 1) == (0, 1, 0)
    assert root_of((0, 0, 1)) == 2
    with pytest.raises(IndexOutOfRange):
        root_labels(3, 3)
    with pytest.raises(MalformedCertificate):
        root_of((1, 1, 0))
    with pytest.raises(MalformedCertificate):
        root_of((0, 0, 0))


def test_n1_needs_a_lower_neighbor():
    g = path(3)
    assert not check_at(g, (0, 1, 0), 0, 2).accepted
    assert check_at(g, (0, 1, 0), 0, 2).violations == {"N1"}
    assert check_at(g, (0, 1, 2), 0, 2).accepted


def test_root_exempt_from_n1():
    assert check_at(path(2), (1, 1), 0, 0).accepted
    assert not check_at(path(2), (1, 1), 0, 1).accepted


def test_n2_rejects_rainbow_triangle():
    g = complete(3)
    verdict = check_at(g, (0, 1, 2), 0, 0)
    assert "N2" in verdict.violations
    # every corner sees the rainbow
    assert all("N2" in check_at(g, (0, 1, 2), 0, v).violations for v in range(3))


def test_values_outside_range_are_malformed():
    with pytest.raises(MalformedCertificate):
        check_at(path(2), (0, 3), 0, 1)


def test_view_without_labels_is_malformed():
    with pytest.raises(MalformedCertificate):
        check_st_local(extract_view(path(2), (0, 1), 0))


def test_bfs_matches_networkx():
    for seed in range(20):
        g = gen_connected(15, 10, seed)
        h = nx.Graph(list(g.edges))
        ref = nx.single_source_shortest_path_length(h, 0)
        assert bfs_distances(g, 0) == [ref[v] for v in range(g.n)]


def test_construct_on_cycle_passes():
    g = cycle(6)
    certs = construct_st_cert(g, 0)
    assert certs == (0, 1, 2, 0, 2, 1)
    assert verify_global(g, certs, SchemeId.SPANNING_TREE, root_labels(6, 0)).accepted


@given(st.integers(1, 30), st.integers(0, 60), st.integers(0, 2**20))
def test_constructor_accepted_on_any_connected_graph(n, extra, seed):
    g = gen_connected(n, extra, seed)
    root = seed % n
    certs = construct_st_cert(g, root)
    labels = root_labels(n, root)
    assert verify_global(g, certs, SchemeId.SPANNING_TREE, labels).accepted
    assert eligibility_acyclic(g, certs)
    for tie in tie_battery(seed):
        assert is_spanning_tree(g, derive_tree(g, certs, labels, tie), root)


def test_tie_rules():
    assert lowest_port(0, [3, 1, 2]) == 1
    assert highest_port(0, [3, 1, 2]) == 3
    a, b = RandomTie(4), RandomTie(4)
    assert [a(0, [0, 1, 2, 3]) for _ in range(10)] == [b(0, [0, 1, 2, 3]) for _ in range(10)]
    assert len(tie_battery()) == 3


def test_derive_tree_on_w5_from_hub():
    g = wheel5()
    certs = construct_st_cert(g, 5)
    assert certs == (1, 1, 1, 1, 1, 0)
    labels = root_labels(6, 5)
    parents = derive_tree(g, certs, labels)
    assert parents[5] is None
    assert all(g.neighbors(v)[parents[v]] == 5 for v in range(5))


def test_derive_tree_missing_parent():
    with pytest.raises(NoEligibleParent):
        derive_tree(path(3), (0, 1, 0), root_labels(3, 0))


def test_is_spanning_tree_rejects_cycles_and_bad_ports():
    g = cycle(3)
    # 1 -> 2 -> 1 loop, root 0 isolated
    p1 = g.port(1, 2)
    p2 = g.port(2, 1)
    assert not is_spanning_tree(g, (None, p1, p2), 0)
    assert not is_spanning_tree(g, (None, 5, 0), 0)
    assert not is_spanning_tree(g, (None, None, 0), 0)
    assert is_spanning_tree(g, (None, g.port(1, 0), g.port(2, 0)), 0)


def test_eligibility_arcs_point_down():
    g = path(3)
    assert sorted(eligibility_arcs(g, (0, 1, 2))) == [(1, 0), (2, 1)]
    assert not eligibility_acyclic(cycle(3), (0, 2, 1))


@given(dismantlable_graphs(max_n=7))
def test_accepted_assignments_give_trees_on_dismantlable(g):
    # independent brute force over 3^n directly through the view checker
    root = 0
    labels = root_labels(g.n, root)
    for values in itertools.product(range(3), repeat=g.n):
        if verify_global(g, values, SchemeId.SPANNING_TREE, labels).accepted:
            assert eligibility_acyclic(g, values)
            assert is_spanning_tree(g, derive_tree(g, values, labels), root)


def test_constructor_small_cases():
    assert construct_st_cert(path(3), 0) == (0, 1, 2)
    for root in range(3):
        certs = construct_st_cert(complete(3), root)
        assert sorted(certs) == [0, 1, 1]
        assert verify_global(complete(3), certs, SchemeId.SPANNING_TREE, root_labels(3, root)).accepted
