"""Planar embeddings as rotation systems, and coloring of even triangulations.

Rotations list each vertex's neighbors in clockwise order.  Faces are walked
with the face on the right: the half-edge after ``(a, b)`` is ``(b, c)``
where ``c`` precedes ``a`` in the rotation of ``b``.  This matches
``networkx.PlanarEmbedding.traverse_face``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator, Mapping

import networkx as nx

from .graph import Graph, PreconditionError


def to_networkx(adj: Mapping[int, set[int]] | Graph) -> nx.Graph:
    if isinstance(adj, Graph):
        adj = adj.adjacency()
    nxg = nx.Graph()
    nxg.add_nodes_from(adj)
    nxg.add_edges_from((u, v) for u, nb in adj.items() for v in nb if u < v)
    return nxg


class Rotation:
    """Mutable clockwise rotation system."""

    __slots__ = ("cw",)

    def __init__(self, cw: Mapping[int, list[int]]):
        self.cw = {v: list(nb) for v, nb in cw.items()}

    @classmethod
    def of(cls, adj: Mapping[int, set[int]] | Graph) -> Rotation | None:
        ok, emb = nx.check_planarity(to_networkx(adj))
        if not ok:
            return None
        return cls({v: list(emb.neighbors_cw_order(v)) for v in emb})

    def copy(self) -> Rotation:
        return Rotation(self.cw)

    def faces(self) -> list[list[int]]:
        cw = self.cw
        pos = {v: {x: i for i, x in enumerate(nb)} for v, nb in cw.items()}
        seen: set[tuple[int, int]] = set()
        out = []
        for u in sorted(cw):
            for v in cw[u]:
                if (u, v) in seen:
                    continue
                face = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    face.append(a)
                    ring = cw[b]
                    a, b = b, ring[pos[b][a] - 1]
                out.append(face)
        return out

    def euler_ok(self) -> bool:
        """Each traced component satisfies V - E + F = 2 (isolated vertices trace no face)."""
        nv = len(self.cw)
        ne = sum(len(nb) for nb in self.cw.values()) // 2
        nf = len(self.faces())
        isolated = sum(1 for nb in self.cw.values() if not nb)
        comps = nx.number_connected_components(to_networkx({v: set(nb) for v, nb in self.cw.items()})) if nv else 0
        return nv - ne + nf == 2 * (comps - isolated) + isolated

    def join(self, face: list[int], i: int, j: int) -> None:
        """Add the edge between positions ``i`` and ``j`` of ``face`` through it."""
        u, v = face[i], face[j]
        pu, pv = face[i - 1], face[j - 1]
        ru, rv = self.cw[u], self.cw[v]
        ru.insert(ru.index(pu), v)
        rv.insert(rv.index(pv), u)

    def merge(self, face: list[int], i: int, j: int, s: int) -> None:
        """Identify the non-adjacent cofacial vertices at positions ``i``, ``j`` into ``s``."""
        u, v = face[i], face[j]
        self.join(face, i, j)
        ru, rv = self.cw.pop(u), self.cw.pop(v)
        k = ru.index(v)
        part_u = ru[k + 1:] + ru[:k]
        k = rv.index(u)
        part_v = rv[k + 1:] + rv[:k]
        common = set(part_u) & set(part_v)
        for x in part_u:
            ring = self.cw[x]
            ring[ring.index(u)] = s
        for x in part_v:
            ring = self.cw[x]
            if x in common:
                ring.remove(v)
            else:
                ring[ring.index(v)] = s
        self.cw[s] = part_u + [x for x in part_v if x not in common]

    def to_networkx(self) -> nx.PlanarEmbedding:
        emb = nx.PlanarEmbedding()
        emb.set_data({v: list(nb) for v, nb in self.cw.items()})
        return emb


@dataclass(frozen=True)
class PlanarEmbedding:
    rotation: Mapping[int, tuple[int, ...]]

    def faces(self) -> list[list[int]]:
        return Rotation({v: list(nb) for v, nb in self.rotation.items()}).faces()


def is_planar(g: Graph) -> PlanarEmbedding | None:
    rot = Rotation.of(g)
    if rot is None:
        return None
    return PlanarEmbedding({v: tuple(nb) for v, nb in rot.cw.items()})


def cofacial_nonedges(adj: Mapping[int, set[int]], faces: list[list[int]]) -> set[tuple[int, int]]:
    out = set()
    for face in faces:
        for i, u in enumerate(face):
            nu = adj[u]
            for v in face[i + 1:]:
                if v != u and v not in nu:
                    out.add((u, v) if u < v else (v, u))
    return out


def planar_preserving_nonedges(g: Graph) -> Iterator[tuple[int, int]]:
    """Non-edges ``uv`` with ``g + uv`` planar, in ascending order."""
    emb = is_planar(g)
    if emb is None:
        raise PreconditionError("graph is not planar")
    adj = g.adjacency()
    easy = cofacial_nonedges(adj, emb.faces())
    base = to_networkx(adj)
    vs = sorted(adj)
    for i, u in enumerate(vs):
        for v in vs[i + 1:]:
            if v in adj[u]:
                continue
            if (u, v) in easy:
                yield (u, v)
                continue
            base.add_edge(u, v)
            ok, _ = nx.check_planarity(base)
            base.remove_edge(u, v)
            if ok:
                yield (u, v)


def is_planar_triangulation(g: Graph, emb: PlanarEmbedding) -> bool:
    if g.n < 3:
        return False
    faces = emb.faces()
    return g.m == 3 * g.n - 6 and all(len(f) == 3 for f in faces)


def _canon(face: tuple[int, ...]) -> tuple[int, ...]:
    return min(face[k:] + face[:k] for k in range(len(face)))


def heawood_coloring(adj: Mapping[int, set[int]], faces: list[list[int]]) -> dict[int, int] | None:
    """3-color a plane triangulation by forcing colors across shared edges.

    Returns None when some vertex has odd degree.  On an even triangulation
    the propagation cannot contradict itself; a contradiction raises.
    """
    if any(len(nb) % 2 for nb in adj.values()):
        return None
    third: dict[tuple[int, int], int] = {}
    for a, b, c in faces:
        third[(a, b)] = c
        third[(b, c)] = a
        third[(c, a)] = b
    seed = tuple(faces[0])
    color = {seed[0]: 0, seed[1]: 1, seed[2]: 2}
    done = {_canon(seed)}
    queue = deque([seed])
    while queue:
        a, b, c = queue.popleft()
        for p, q in ((a, b), (b, c), (c, a)):
            d = third[(q, p)]
            forced = 3 - color[p] - color[q]
            if color.setdefault(d, forced) != forced:
                raise RuntimeError(f"inconsistent forced color at vertex {d}")
            face = (q, p, d)
            key = _canon(face)
            if key not in done:
                done.add(key)
                queue.append(face)
    return color


def color_even_triangulation(g: Graph, emb: PlanarEmbedding) -> dict[int, int] | None:
    if not is_planar_triangulation(g, emb):
        raise PreconditionError("input is not a planar triangulation")
    return heawood_coloring(g.adjacency(), emb.faces())
