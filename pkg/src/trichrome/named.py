"""Small named graphs, all on vertices 1..n."""
from __future__ import annotations

from itertools import combinations

from .graph import Graph


def complete(n: int) -> Graph:
    return Graph(range(1, n + 1), combinations(range(1, n + 1), 2))


def path(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def cycle(n: int) -> Graph:
    return Graph(range(1, n + 1), [(i, i % n + 1) for i in range(1, n + 1)])


def wheel(rim: int) -> Graph:
    """Cycle on 1..rim plus hub ``rim + 1``."""
    hub = rim + 1
    edges = [(i, i % rim + 1) for i in range(1, rim + 1)]
    edges += [(i, hub) for i in range(1, rim + 1)]
    return Graph(range(1, hub + 1), edges)


def complete_bipartite(a: int, b: int) -> Graph:
    left = range(1, a + 1)
    right = range(a + 1, a + b + 1)
    return Graph(range(1, a + b + 1), [(u, v) for u in left for v in right])


def diamond() -> Graph:
    """K112 with pair (1, 2) and spine (3, 4)."""
    return Graph(range(1, 5), [(3, 4), (1, 3), (1, 4), (2, 3), (2, 4)])


def tadpole() -> Graph:
    """T31: triangle 1, 2, 3 with tail 4 on vertex 3."""
    return Graph(range(1, 5), [(1, 2), (2, 3), (1, 3), (3, 4)])


def petersen() -> Graph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Graph(range(1, 11), outer + spokes + inner)


def mycielskian(g: Graph) -> Graph:
    vs = g.vertices()
    n = len(vs)
    index = {v: i + 1 for i, v in enumerate(vs)}
    edges = []
    for u, v in g.edges():
        a, b = index[u], index[v]
        edges += [(a, b), (a, b + n), (a + n, b)]
    apex = 2 * n + 1
    edges += [(i + n, apex) for i in range(1, n + 1)]
    return Graph(range(1, apex + 1), edges)


def grotzsch() -> Graph:
    """Triangle-free, 11 vertices, chromatic number 4."""
    return mycielskian(cycle(5))


def octahedron() -> Graph:
    verts = range(1, 7)
    antipode = {1: 6, 2: 4, 3: 5, 4: 2, 5: 3, 6: 1}
    return Graph(verts, [(u, v) for u, v in combinations(verts, 2) if antipode[u] != v])


def icosahedron() -> Graph:
    top, bottom = 1, 12
    upper = list(range(2, 7))
    lower = list(range(7, 12))
    edges = [(top, u) for u in upper] + [(bottom, w) for w in lower]
    for i in range(5):
        edges.append((upper[i], upper[(i + 1) % 5]))
        edges.append((lower[i], lower[(i + 1) % 5]))
        edges.append((upper[i], lower[i]))
        edges.append((upper[(i + 1) % 5], lower[i]))
    return Graph(range(1, 13), edges)


CATALOG = {
    "k3": lambda: complete(3),
    "k4": lambda: complete(4),
    "k5": lambda: complete(5),
    "c4": lambda: cycle(4),
    "c5": lambda: cycle(5),
    "w5": lambda: wheel(5),
    "w6": lambda: wheel(6),
    "k33": lambda: complete_bipartite(3, 3),
    "k112": diamond,
    "t31": tadpole,
    "petersen": petersen,
    "grotzsch": grotzsch,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
}
