import random

import pytest

from trichrome import named
from trichrome.graph import Graph, PreconditionError
from trichrome.oracle import backtrack_3col, exhaustive_3col

from conftest import random_graph


def _proper(g: Graph, col) -> bool:
    return (set(col) == set(g.vertices()) and set(col.values()) <= {0, 1, 2}
            and all(col[u] != col[v] for u, v in g.edges()))


@pytest.mark.parametrize("g, colorable", [
    (named.complete(4), False), (named.wheel(5), False), (named.grotzsch(), False),
    (named.petersen(), True), (named.cycle(5), True), (named.complete_bipartite(3, 3), True),
    (named.octahedron(), True), (named.icosahedron(), False), (Graph(), True),
])
def test_named_graphs(g, colorable):
    for col in (exhaustive_3col(g), backtrack_3col(g).coloring):
        assert (col is not None) == colorable
        if col is not None:
            assert _proper(g, col)


def test_exhaustive_refuses_large_graphs():
    with pytest.raises(PreconditionError):
        exhaustive_3col(named.cycle(17))


def test_oracles_agree_on_600_random_graphs():
    rng = random.Random(2024)
    colorable = 0
    for _ in range(600):
        g = random_graph(rng.randint(1, 12), rng.uniform(1.5, 7.0), rng)
        a, b = exhaustive_3col(g), backtrack_3col(g)
        assert b.completed
        assert (a is None) == (b.coloring is None)
        for col in (a, b.coloring):
            if col is not None:
                assert _proper(g, col)
        colorable += a is not None
    assert 100 < colorable < 500


def test_node_limit_stops_the_search():
    res = backtrack_3col(named.grotzsch(), node_limit=3)
    assert not res.completed and res.coloring is None and res.nodes == 4
