"""Simple undirected graphs with contraction-stable vertex ids.

Vertices are integers.  Contracting two vertices retires both ids and creates
a fresh survivor id taken from the graph's ``next_id`` counter, so a sequence
of contractions names every intermediate vertex unambiguously.  All module
level operations return new values and leave their inputs untouched.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping


class PreconditionError(ValueError):
    """Raised when an operation is applied outside its contract."""


class Graph:
    """Simple undirected graph keyed by integer vertex ids."""

    __slots__ = ("_adj", "next_id")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[tuple[int, int]] = (),
                 next_id: int | None = None):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"loop at vertex {u}")
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        self._adj = adj
        floor = max(adj) + 1 if adj else 1
        self.next_id = floor if next_id is None else max(next_id, floor)

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]], next_id: int | None = None) -> Graph:
        g = cls.__new__(cls)
        g._adj = {v: set(nb) for v, nb in adj.items()}
        floor = max(g._adj) + 1 if g._adj else 1
        g.next_id = floor if next_id is None else max(next_id, floor)
        return g

    def copy(self) -> Graph:
        return Graph.from_adjacency(self._adj, self.next_id)

    # -- queries -------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def vertices(self) -> list[int]:
        return sorted(self._adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nb in self._adj.items() for v in nb if u < v)

    def neighbors(self, v: int) -> frozenset[int]:
        return frozenset(self._adj[v])

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def adjacency(self) -> dict[int, set[int]]:
        """A deep copy of the adjacency map."""
        return {v: set(nb) for v, nb in self._adj.items()}

    def subgraph(self, vertices: Iterable[int]) -> Graph:
        keep = set(vertices)
        return Graph.from_adjacency({v: self._adj[v] & keep for v in keep}, self.next_id)

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for root in sorted(self._adj):
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def is_simple(self) -> bool:
        for u, nb in self._adj.items():
            if u in nb:
                return False
            for v in nb:
                if v not in self._adj or u not in self._adj[v]:
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class MergePartition:
    """Map from live (super-)vertex id to the original vertices it absorbed."""

    classes: Mapping[int, frozenset[int]]

    @classmethod
    def identity(cls, g: Graph) -> MergePartition:
        return cls({v: frozenset((v,)) for v in g.vertices()})

    def originals(self) -> frozenset[int]:
        out: set[int] = set()
        for members in self.classes.values():
            out |= members
        return frozenset(out)

    def class_of(self, original: int) -> int:
        for key, members in self.classes.items():
            if original in members:
                return key
        raise KeyError(original)


@dataclass(frozen=True)
class DiamondWitness:
    """A K112: ``pair`` is the non-adjacent couple, ``spine`` the shared edge."""

    pair: tuple[int, int]
    spine: tuple[int, int]


@dataclass(frozen=True)
class TadpoleWitness:
    """A T31: triangle ``x, y, z`` with tail ``w`` hanging off ``z``."""

    x: int
    y: int
    z: int
    w: int

    @property
    def triangle(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


def _live(g: Graph, *vs: int) -> None:
    for v in vs:
        if not g.has_vertex(v):
            raise PreconditionError(f"vertex {v} is not live")


def contract(g: Graph, p: MergePartition, u: int, v: int) -> tuple[Graph, MergePartition]:
    """Identify non-adjacent ``u`` and ``v`` into the fresh vertex ``g.next_id``."""
    _live(g, u, v)
    if u == v:
        raise PreconditionError("cannot contract a vertex with itself")
    if g.has_edge(u, v):
        raise PreconditionError(f"cannot contract adjacent vertices {u} and {v}")
    adj = g.adjacency()
    s = g.next_id
    nu, nv = adj.pop(u), adj.pop(v)
    merged = nu | nv
    for x in merged:
        adj[x].discard(u)
        adj[x].discard(v)
        adj[x].add(s)
    adj[s] = merged
    classes = dict(p.classes)
    classes[s] = classes.pop(u) | classes.pop(v)
    return Graph.from_adjacency(adj, s + 1), MergePartition(classes)


def add_edge(g: Graph, u: int, v: int) -> Graph:
    _live(g, u, v)
    if u == v:
        raise PreconditionError("loops are not allowed")
    if g.has_edge(u, v):
        raise PreconditionError(f"edge {u}-{v} already present")
    adj = g.adjacency()
    adj[u].add(v)
    adj[v].add(u)
    return Graph.from_adjacency(adj, g.next_id)


def find_diamond(g: Graph) -> DiamondWitness | None:
    """First K112 with a non-adjacent pair, scanning spine edges in order."""
    adj = g._adj
    for z, w in g.edges():
        common = sorted(adj[z] & adj[w])
        for a, b in combinations(common, 2):
            if b not in adj[a]:
                return DiamondWitness((a, b), (z, w))
    return None


def contains_k4(g: Graph) -> tuple[int, int, int, int] | None:
    adj = g._adj
    for z, w in g.edges():
        common = sorted(adj[z] & adj[w])
        for a, b in combinations(common, 2):
            if b in adj[a]:
                return tuple(sorted((z, w, a, b)))  # type: ignore[return-value]
    return None


def find_tadpoles(g: Graph) -> Iterator[TadpoleWitness]:
    """Every T31 whose tail is non-adjacent to both free triangle vertices.

    Both orientations of the free pair are produced, since ``(x, y)`` and
    ``(y, x)`` pose different contraction tests.
    """
    adj = g._adj
    for z in sorted(adj):
        nz = adj[z]
        for x in sorted(nz):
            for y in sorted(nz & adj[x]):
                for w in sorted(nz):
                    if w == x or w == y or w in adj[x] or w in adj[y]:
                        continue
                    yield TadpoleWitness(x, y, z, w)


def non_edges(g: Graph) -> Iterator[tuple[int, int]]:
    adj = g._adj
    vs = sorted(adj)
    for i, u in enumerate(vs):
        nu = adj[u]
        for v in vs[i + 1:]:
            if v not in nu:
                yield (u, v)


def common_neighbors(g: Graph, u: int, v: int) -> frozenset[int]:
    return frozenset(g._adj[u] & g._adj[v])


def induced_neighborhood(g: Graph, u: int) -> Graph:
    _live(g, u)
    return g.subgraph(g._adj[u])


def two_coloring(adj: Mapping[int, Iterable[int]], within: Iterable[int] | None = None) -> dict[int, int] | None:
    """2-color the subgraph induced on ``within`` (default: all), or None."""
    nodes = set(adj) if within is None else set(within)
    side: dict[int, int] = {}
    for root in sorted(nodes):
        if root in side:
            continue
        side[root] = 0
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in nodes:
                    continue
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    return None
    return side


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g._adj) is not None
