import networkx as nx
import pytest
from hypothesis import given

from trichrome import named
from trichrome.graph import (
    Graph,
    MergePartition,
    PreconditionError,
    add_edge,
    contains_k4,
    contract,
    find_diamond,
    find_tadpoles,
    is_bipartite,
    non_edges,
    two_coloring,
)
from trichrome.planarity import to_networkx

from conftest import small_graphs


def test_basic_queries():
    g = named.cycle(5)
    assert g.n == 5 and g.m == 5
    assert g.vertices() == [1, 2, 3, 4, 5]
    assert g.has_edge(1, 5) and not g.has_edge(1, 3)
    assert g.degree(3) == 2
    assert g.next_id == 6


def test_loop_rejected():
    with pytest.raises(PreconditionError):
        Graph([1], [(1, 1)])


def test_contract_allocates_fresh_id():
    g = named.cycle(4)
    h, p = contract(g, MergePartition.identity(g), 1, 3)
    assert h.vertices() == [2, 4, 5]
    assert h.neighbors(5) == {2, 4}
    assert p.classes[5] == {1, 3}
    assert h.next_id == 6
    assert g.n == 4, "input left untouched"


def test_contract_preconditions():
    g = named.cycle(4)
    p = MergePartition.identity(g)
    with pytest.raises(PreconditionError):
        contract(g, p, 1, 2)
    with pytest.raises(PreconditionError):
        contract(g, p, 1, 1)
    with pytest.raises(PreconditionError):
        contract(g, p, 1, 9)


def test_add_edge():
    g = named.path(3)
    h = add_edge(g, 1, 3)
    assert h.has_edge(1, 3) and not g.has_edge(1, 3)
    with pytest.raises(PreconditionError):
        add_edge(h, 1, 3)


def test_diamond_and_k4_detection():
    d = find_diamond(named.diamond())
    assert d.pair == (1, 2) and set(d.spine) == {3, 4}
    assert contains_k4(named.complete(4)) == (1, 2, 3, 4)
    assert contains_k4(named.diamond()) is None
    assert find_diamond(named.complete(4)) is None
    assert find_diamond(named.cycle(5)) is None


def test_tadpoles_of_t31():
    found = {(t.x, t.y, t.z, t.w) for t in find_tadpoles(named.tadpole())}
    assert found == {(1, 2, 3, 4), (2, 1, 3, 4)}


def test_subgraph_keeps_counter():
    g = Graph([1, 2, 3, 10], [(1, 2), (3, 10)])
    h = g.subgraph([1, 2])
    assert h.next_id == 11
    assert g.components() == [[1, 2], [3, 10]]


@given(small_graphs())
def test_contract_matches_networkx(g):
    pairs = list(non_edges(g))
    if not pairs:
        return
    u, v = pairs[0]
    h, p = contract(g, MergePartition.identity(g), u, v)
    ref = nx.contracted_nodes(to_networkx(g), u, v, self_loops=False)
    ref = nx.relabel_nodes(ref, {u: h.next_id - 1})
    assert set(map(frozenset, to_networkx(h).edges)) == set(map(frozenset, ref.edges))
    assert set(h.vertices()) == set(ref.nodes)
    assert h.m <= g.m
    assert p.originals() == frozenset(g.vertices())


@given(small_graphs())
def test_two_coloring_matches_networkx(g):
    side = two_coloring(g.adjacency())
    assert (side is not None) == nx.is_bipartite(to_networkx(g))
    assert is_bipartite(g) == (side is not None)
    if side is not None:
        assert all(side[u] != side[v] for u, v in g.edges())


@given(small_graphs())
def test_k4_detection_matches_clique_number(g):
    has = contains_k4(g) is not None
    cliques = nx.find_cliques(to_networkx(g)) if g.n else []
    assert has == any(len(c) >= 4 for c in cliques)


@given(small_graphs())
def test_find_diamond_is_a_real_diamond(g):
    d = find_diamond(g)
    if d is None:
        # every edge's common neighbourhood is a clique
        for z, w in g.edges():
            common = sorted(g.neighbors(z) & g.neighbors(w))
            assert all(g.has_edge(a, b) for i, a in enumerate(common) for b in common[i + 1:])
        return
    (a, b), (z, w) = d.pair, d.spine
    assert not g.has_edge(a, b) and g.has_edge(z, w)
    assert all(g.has_edge(x, y) for x in (a, b) for y in (z, w))
