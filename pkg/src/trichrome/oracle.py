"""Independent reference deciders, sharing no code with the solver."""
from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, PreconditionError

EXHAUSTIVE_LIMIT = 16


def exhaustive_3col(g: Graph) -> dict[int, int] | None:
    """Plain depth-first search over colorings in vertex-id order.

    The first vertex of each component gets color 0 and a vertex may only use
    one new color beyond those already placed, which removes the color
    permutation symmetry without pruning anything else.
    """
    if g.n > EXHAUSTIVE_LIMIT:
        raise PreconditionError(f"exhaustive search is limited to {EXHAUSTIVE_LIMIT} vertices")
    order = g.vertices()
    adj = {v: g.neighbors(v) for v in order}
    color: dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(used + 1, 3)):
            if all(color.get(x) != c for x in adj[v]):
                color[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                del color[v]
        return False

    return dict(color) if place(0, 0) else None


@dataclass
class BacktrackResult:
    coloring: dict[int, int] | None
    nodes: int
    completed: bool = True


def backtrack_3col(g: Graph, node_limit: int | None = None) -> BacktrackResult:
    """DSATUR-ordered backtracking with forward checking.

    ``nodes`` counts assignments tried.  With ``node_limit`` the search may
    stop early, reported as ``completed=False``.
    """
    adj = {v: g.neighbors(v) for v in g.vertices()}
    domain = {v: 0b111 for v in adj}
    color: dict[int, int] = {}
    nodes = 0

    class _Stop(Exception):
        pass

    def pick() -> int:
        best, key = -1, None
        for v in adj:
            if v in color:
                continue
            k = (bin(domain[v]).count("1"), -len(adj[v]), v)
            if key is None or k < key:
                best, key = v, k
        return best

    def search() -> bool:
        nonlocal nodes
        if len(color) == len(adj):
            return True
        v = pick()
        for c in range(3):
            if not domain[v] >> c & 1:
                continue
            nodes += 1
            if node_limit is not None and nodes > node_limit:
                raise _Stop
            bit = 1 << c
            changed = []
            wiped = False
            for x in adj[v]:
                if x not in color and domain[x] & bit:
                    domain[x] &= ~bit
                    changed.append(x)
                    if not domain[x]:
                        wiped = True
            color[v] = c
            if not wiped and search():
                return True
            del color[v]
            for x in changed:
                domain[x] |= bit
        return False

    try:
        ok = search()
    except _Stop:
        return BacktrackResult(None, nodes, completed=False)
    return BacktrackResult(dict(color) if ok else None, nodes)
