"""Parametric 3-coloring: decision routines, coloring drivers and the alpha loop.

Every routine answers with a :class:`~trichrome.certificates.SolverOutcome`:
NO with an uncolorability certificate, YES with a coloring, or UNDETERMINED
when the recursion budget ``alpha`` was not enough.  Undetermined is an
ordinary answer, never an error.

The search runs on a private trail-based workspace so that the nested
"what if" probes (``G + uv`` in general mode, ``G / xw`` in planar mode) are
applied in place and rolled back instead of copying the graph.
"""
from __future__ import annotations

import logging
import random
from collections import deque
from dataclasses import dataclass, field
from math import comb
from typing import Iterable

from .certificates import (
    ColoringCertificate,
    ContractionStep,
    Diamond,
    NestedEdge,
    NestedTadpole,
    SolverOutcome,
    UncolorabilityCertificate,
    Verdict,
)
from .graph import Graph, PreconditionError, two_coloring
from .planarity import Rotation, heawood_coloring

log = logging.getLogger(__name__)

MODES = ("general", "improved", "planar")

NO, YES, UNDETERMINED = Verdict.NO, Verdict.YES, Verdict.UNDETERMINED


@dataclass
class SolveConfig:
    alpha: int = 0
    alpha_max: int = 6
    mode: str = "improved"
    rng_seed: int = 0
    max_calls: int | None = None
    check_planarity: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.alpha < 0 or self.alpha_max < 0:
            raise ValueError("budgets are non-negative")
        if self.alpha > self.alpha_max:
            raise ValueError("alpha exceeds alpha_max")


@dataclass(frozen=True)
class ObservedAlpha:
    """Smallest budget that produced a determinate verdict under the given ordering.

    ``exceeded`` marks the ``alpha_max + 1`` sentinel; ``out_of_calls`` says the
    loop stopped on the call budget rather than by reaching ``alpha_max``.
    """

    value: int
    exceeded: bool = False
    out_of_calls: bool = False


@dataclass
class SolveStats:
    """Counters shared by one solve; the envelope fields back the complexity audit."""

    calls: int = 0
    calls_by_depth: list[int] = field(default_factory=list)
    max_depth: int = 0
    top_calls: int = 0
    max_rounds: int = 0
    round_violations: int = 0
    envelope_violations: int = 0
    worst_envelope_ratio: float = 0.0
    max_calls: int | None = None
    budget_exhausted: bool = False
    planarity_checks: int = 0
    planarity_lost: int = 0
    watch_planarity: bool = False
    odd_vertex_bailouts: int = 0

    def merge(self, other: SolveStats) -> None:
        self.calls += other.calls
        for d, c in enumerate(other.calls_by_depth):
            if d < len(self.calls_by_depth):
                self.calls_by_depth[d] += c
            else:
                self.calls_by_depth.append(c)
        self.max_depth = max(self.max_depth, other.max_depth)
        self.top_calls += other.top_calls
        self.max_rounds = max(self.max_rounds, other.max_rounds)
        self.round_violations += other.round_violations
        self.envelope_violations += other.envelope_violations
        self.worst_envelope_ratio = max(self.worst_envelope_ratio, other.worst_envelope_ratio)
        self.budget_exhausted |= other.budget_exhausted
        self.planarity_checks += other.planarity_checks
        self.planarity_lost += other.planarity_lost
        self.odd_vertex_bailouts += other.odd_vertex_bailouts


class _OutOfCalls(Exception):
    pass


class PlanarityLost(AssertionError):
    """A planar routine produced a non-planar intermediate graph."""


def _watch(w: _Work, stats: SolveStats, strict: bool = False) -> None:
    """Planarity check on the live graph when ``stats.watch_planarity`` is set.

    Contracting a diamond pair or a tadpole pair can leave the planar class
    (two non-adjacent vertices with three common neighbours already do), so
    inside the decision routine a loss is only counted.  The coloring driver
    only ever joins or merges cofacial vertices; there a loss is a bug.
    """
    if not stats.watch_planarity:
        return
    stats.planarity_checks += 1
    if Rotation.of(w.adj) is None:
        stats.planarity_lost += 1
        if strict:
            raise PlanarityLost("planar driver produced a non-planar graph")


class _Work:
    """Adjacency with an undo trail and the merge tree of all contractions."""

    __slots__ = ("adj", "next_id", "parent", "up", "trail")

    def __init__(self, g: Graph):
        self.adj = g.adjacency()
        self.next_id = g.next_id
        self.parent: dict[int, tuple[int, int]] = {}
        self.up: dict[int, int] = {}
        self.trail: list[tuple] = []

    def join(self, a: int, b: int) -> None:
        self.adj[a].add(b)
        self.adj[b].add(a)
        self.trail.append((a, b))

    def merge(self, a: int, b: int) -> int:
        adj = self.adj
        s = self.next_id
        self.next_id = s + 1
        na = adj.pop(a)
        nb = adj.pop(b)
        for x in na:
            adj[x].discard(a)
        for x in nb:
            adj[x].discard(b)
        ns = na | nb
        for x in ns:
            adj[x].add(s)
        adj[s] = ns
        self.parent[s] = (a, b)
        self.up[a] = s
        self.up[b] = s
        self.trail.append((a, b, s, na, nb))
        return s

    def undo(self, mark: int) -> None:
        adj, trail = self.adj, self.trail
        while len(trail) > mark:
            rec = trail.pop()
            if len(rec) == 2:
                a, b = rec
                adj[a].discard(b)
                adj[b].discard(a)
                continue
            a, b, s, na, nb = rec
            for x in adj.pop(s):
                adj[x].discard(s)
            adj[a] = na
            adj[b] = nb
            for x in na:
                adj[x].add(a)
            for x in nb:
                adj[x].add(b)
            del self.parent[s]
            del self.up[a]
            del self.up[b]
            self.next_id = s

    def find(self, v: int) -> int:
        while v not in self.adj:
            v = self.up[v]
        return v

    def members(self, s: int) -> list[int]:
        out, stack = [], [s]
        while stack:
            x = stack.pop()
            kids = self.parent.get(x)
            if kids is None:
                out.append(x)
            else:
                stack.extend(kids)
        return out

    def lift(self, colors: dict[int, int]) -> dict[int, int]:
        """Extend a coloring of the live vertices to the original ones."""
        return {orig: c for v, c in colors.items() for orig in self.members(v)}

    def singleton_coloring(self) -> dict[int, int]:
        return self.lift({v: i for i, v in enumerate(sorted(self.adj))})


# -- seeds for incremental diamond search ------------------------------------------


def _all_edges(adj: dict[int, set[int]]) -> list[tuple[int, int]]:
    return [(u, v) for u in sorted(adj) for v in sorted(adj[u]) if u < v]


def _around_merge(adj: dict[int, set[int]], s: int) -> list[tuple[int, int]]:
    ns = adj[s]
    seed = [(s, x) for x in sorted(ns)]
    for x in sorted(ns):
        seed.extend((x, y) for y in sorted(adj[x] & ns) if x < y)
    return seed


def _around_join(adj: dict[int, set[int]], a: int, b: int) -> list[tuple[int, int]]:
    seed = [(a, b)]
    for x in sorted(adj[a] & adj[b]):
        seed.append((a, x))
        seed.append((b, x))
    return seed


def _reduce(w: _Work, seed: Iterable[tuple[int, int]], steps: list[ContractionStep],
            stats: SolveStats) -> tuple[int, int, int, int] | None:
    """Contract diamond pairs until none is left; return a K4 if one appears.

    Only edges in ``seed`` (and those touched by later contractions) are
    inspected, which is exhaustive as long as the graph was diamond- and
    K4-free apart from the change that produced ``seed``.
    """
    adj = w.adj
    queue = deque(seed)
    # a K4 is reported as soon as it exists, before any further contraction,
    # so certificates carry no steps the final K4 does not depend on
    k4 = _k4_on(adj, queue)
    if k4 is not None:
        return k4
    n0 = len(adj)
    rounds = 0
    while queue:
        z, t = queue.popleft()
        nz = adj.get(z)
        if nz is None or t not in nz:
            continue
        common = nz & adj[t]
        if len(common) < 2:
            continue
        cs = sorted(common)
        pair = None
        for i, a in enumerate(cs):
            na = adj[a]
            for b in cs[i + 1:]:
                if b in na:
                    return tuple(sorted((z, t, a, b)))  # type: ignore[return-value]
                if pair is None:
                    pair = (a, b)
        a, b = pair  # type: ignore[misc]
        steps.append(ContractionStep((a, b), Diamond((z, t))))
        s = w.merge(a, b)
        _watch(w, stats)
        rounds += 1
        fresh = _around_merge(adj, s)
        k4 = _k4_on(adj, fresh)
        if k4 is not None:
            _count_rounds(stats, rounds, n0)
            return k4
        queue.extend(fresh)
    _count_rounds(stats, rounds, n0)
    return None


def _count_rounds(stats: SolveStats, rounds: int, n0: int) -> None:
    if rounds > stats.max_rounds:
        stats.max_rounds = rounds
    if rounds > comb(n0, 2):
        stats.round_violations += 1


def _k4_on(adj: dict[int, set[int]], edges: Iterable[tuple[int, int]]) -> tuple[int, int, int, int] | None:
    """A K4 containing one of ``edges``, if any."""
    for z, t in edges:
        nz = adj.get(z)
        if nz is None or t not in nz:
            continue
        common = nz & adj[t]
        for a in common:
            hit = common & adj[a]
            if hit:
                return tuple(sorted((z, t, a, min(hit))))  # type: ignore[return-value]
    return None


def _k4_touching(adj: dict[int, set[int]], vs: Iterable[int]) -> bool:
    for v in vs:
        nv = adj[v]
        for x in nv:
            common = nv & adj[x]
            for y in common:
                if common & adj[y]:
                    return True
    return False


def _non_edges(adj: dict[int, set[int]]) -> list[tuple[int, int]]:
    vs = sorted(adj)
    out = []
    for i, u in enumerate(vs):
        nu = adj[u]
        out.extend((u, v) for v in vs[i + 1:] if v not in nu)
    return out


def _distance_two(adj: dict[int, set[int]]) -> list[tuple[int, int]]:
    out = set()
    for x in adj:
        nx_ = sorted(adj[x])
        for i, a in enumerate(nx_):
            na = adj[a]
            for b in nx_[i + 1:]:
                if b not in na:
                    out.add((a, b))
    return sorted(out)


def _tadpoles(adj: dict[int, set[int]]) -> list[tuple[int, int, int, int]]:
    out = []
    for z in sorted(adj):
        nz = adj[z]
        for x in sorted(nz):
            nx_ = adj[x]
            for y in sorted(nz & nx_):
                ny = adj[y]
                out.extend((x, y, z, t) for t in sorted(nz) if t != x and t != y and t not in nx_ and t not in ny)
    return out


# -- decision routine (general and planar) -------------------------------------------


def _decide(w: _Work, alpha: int, seed, stats: SolveStats, depth: int, planar: bool,
            steps: list[ContractionStep]):
    """Diamond exhaustion, then budgeted probing; mutates ``w`` in place.

    Returns ``(verdict, payload)`` with payload a certificate (NO), a coloring
    of the original vertices (YES) or None.  On UNDETERMINED the workspace is
    left reduced: every contraction applied is forced.
    """
    if stats.max_calls is not None and stats.calls >= stats.max_calls:
        raise _OutOfCalls
    stats.calls += 1
    if depth < len(stats.calls_by_depth):
        stats.calls_by_depth[depth] += 1
    else:
        stats.calls_by_depth.append(1)
    stats.max_depth = max(stats.max_depth, depth)

    adj = w.adj
    k4 = _reduce(w, seed, steps, stats)
    if k4 is not None:
        return NO, UncolorabilityCertificate(tuple(steps), k4)
    if len(adj) <= 3:
        return YES, w.singleton_coloring()
    if alpha == 0:
        return UNDETERMINED, None

    while True:
        if planar:
            probes = _tadpoles(adj)
        elif alpha == 1:
            # G + ab with no common neighbour of a and b is already reduced and
            # holds more than three vertices, so the child at budget 0 is
            # undetermined; only pairs at distance two can change anything
            probes = _distance_two(adj)
        else:
            probes = _non_edges(adj)
        for probe in probes:
            mark = len(w.trail)
            if planar:
                x, y, z, t = probe
                s = w.merge(x, t)
                _watch(w, stats)
                sub_seed = _around_merge(adj, s)
            else:
                a, b = probe
                w.join(a, b)
                sub_seed = _around_join(adj, a, b)
            sub_steps: list[ContractionStep] = []
            verdict, payload = _decide(w, alpha - 1, sub_seed, stats, depth + 1, planar, sub_steps)
            w.undo(mark)
            if verdict is YES:
                # a coloring of G + uv or of G / xw is a coloring of G
                return YES, payload
            if verdict is NO:
                if planar:
                    pair = (y, t)
                    why = NestedTadpole((x, y, z, t), payload)
                else:
                    pair = (a, b)
                    why = NestedEdge(payload)
                steps.append(ContractionStep(pair, why))
                s = w.merge(*pair)
                _watch(w, stats)
                k4 = _reduce(w, _around_merge(adj, s), steps, stats)
                if k4 is not None:
                    return NO, UncolorabilityCertificate(tuple(steps), k4)
                if len(adj) <= 3:
                    return YES, w.singleton_coloring()
                break
        else:
            return UNDETERMINED, None


def _decide_top(w: _Work, alpha: int, seed, stats: SolveStats, planar: bool,
                steps: list[ContractionStep] | None = None):
    n = len(w.adj)
    before = stats.calls
    stats.top_calls += 1
    result = _decide(w, alpha, seed, stats, 0, planar, [] if steps is None else steps)
    used = stats.calls - before
    envelope = max(comb(n, 2), 1) ** (alpha + 1)
    stats.worst_envelope_ratio = max(stats.worst_envelope_ratio, used / envelope)
    if used > envelope:
        stats.envelope_violations += 1
    return result


# -- coloring drivers --------------------------------------------------------------


def _driver_basic(w: _Work, alpha: int, stats: SolveStats):
    verdict, payload = _decide_top(w, alpha, _all_edges(w.adj), stats, False)
    if verdict is not UNDETERMINED:
        return verdict, payload
    adj = w.adj
    while len(adj) > 3:
        u, v = _non_edges(adj)[0]
        mark = len(w.trail)
        s = w.merge(u, v)
        verdict, payload = _decide_top(w, alpha, _around_merge(adj, s), stats, False)
        if verdict is YES:
            return YES, payload
        if verdict is NO:
            w.undo(mark)
            w.join(u, v)
            if _reduce(w, _around_join(adj, u, v), [], stats) is not None:
                return UNDETERMINED, None
    return YES, w.singleton_coloring()


def _driver_improved(w: _Work, alpha: int, stats: SolveStats):
    verdict, payload = _decide_top(w, alpha, _all_edges(w.adj), stats, False)
    if verdict is not UNDETERMINED:
        return verdict, payload
    adj = w.adj
    u = min(adj, key=lambda x: (-len(adj[x]), x))
    while len(adj[u]) < len(adj) - 1:
        nu = adj[u]
        v = min((x for x in adj if x != u and x not in nu), key=lambda x: (len(nu & adj[x]), x))
        mark = len(w.trail)
        s = w.merge(u, v)
        verdict, payload = _decide_top(w, alpha, _around_merge(adj, s), stats, False)
        if verdict is YES:
            return YES, payload
        if verdict is NO:
            w.undo(mark)
            w.join(u, v)
            if _reduce(w, _around_join(adj, u, v), [], stats) is not None:
                return UNDETERMINED, None
            u = w.find(u)
        else:
            u = w.find(s)
        if len(adj) <= 3:
            return YES, w.singleton_coloring()
        if two_coloring(adj, adj[u]) is None:
            return UNDETERMINED, None
    sides = two_coloring(adj, adj[u])
    if sides is None:
        return UNDETERMINED, None
    colors = {x: 1 + side for x, side in sides.items()}
    colors[u] = 0
    return YES, w.lift(colors)


def _cofacial_pair(adj: dict[int, set[int]], faces: list[list[int]]):
    """Smallest non-adjacent pair two apart on a face, else smallest on any face."""
    best = None
    for f in faces:
        L = len(f)
        if L < 4:
            continue
        for i in range(L):
            j = (i + 2) % L
            a, b = f[i], f[j]
            if a != b and b not in adj[a]:
                key = (a, b) if a < b else (b, a)
                if best is None or key < best[0]:
                    best = (key, f, i, j)
    if best is not None:
        return best
    for f in faces:
        for i in range(len(f)):
            for j in range(i + 1, len(f)):
                a, b = f[i], f[j]
                if a != b and b not in adj[a]:
                    key = (a, b) if a < b else (b, a)
                    if best is None or key < best[0]:
                        best = (key, f, i, j)
    return best


def _driver_planar(w: _Work, alpha: int, stats: SolveStats, check_planarity: bool):
    verdict, payload = _decide_top(w, alpha, _all_edges(w.adj), stats, True)
    if verdict is not UNDETERMINED:
        return verdict, payload
    # the planar driver walks the unreduced graph, which stays planar
    w.undo(0)
    adj = w.adj
    rot = Rotation.of(adj)
    if rot is None:
        raise PreconditionError("planar mode needs a planar graph")
    while True:
        if len(adj) <= 3:
            return YES, w.singleton_coloring()
        faces = rot.faces()
        if all(len(f) == 3 for f in faces):
            break
        pick = _cofacial_pair(adj, faces)
        if pick is None:
            raise RuntimeError("non-triangulated plane graph without a cofacial non-edge")
        (u, v), face, i, j = pick
        mark = len(w.trail)
        s = w.merge(u, v)
        verdict, payload = _decide_top(w, alpha, _all_edges(adj), stats, True)
        w.undo(mark)
        if verdict is YES:
            return YES, payload
        if verdict is NO:
            w.join(u, v)
            rot.join(face, i, j)
            touched = (u, v)
        else:
            s = w.merge(u, v)
            rot.merge(face, i, j, s)
            touched = (s,)
        if check_planarity:
            _watch(w, stats, strict=True)
            if not rot.euler_ok():
                raise PlanarityLost("rotation system out of sync with the graph")
        if _k4_touching(adj, touched):
            return UNDETERMINED, None
    colors = heawood_coloring(adj, faces)
    if colors is None:
        stats.odd_vertex_bailouts += 1
        return UNDETERMINED, None
    return YES, w.lift(colors)


# -- public entry points ------------------------------------------------------------


def _component_graphs(g: Graph) -> list[Graph]:
    comps = g.components()
    if len(comps) <= 1:
        return [g]
    return [g.subgraph(c) for c in comps]


def _combine(g: Graph, parts) -> SolverOutcome:
    colors: dict[int, int] = {}
    undetermined = False
    for verdict, payload in parts:
        if verdict is NO:
            return SolverOutcome(NO, payload)
        if verdict is UNDETERMINED:
            undetermined = True
        else:
            colors.update(payload)
    if undetermined:
        return SolverOutcome(UNDETERMINED)
    return SolverOutcome(YES, ColoringCertificate.from_mapping(colors))


def _run(g: Graph, alpha: int, kind: str, max_calls: int | None = None,
         check_planarity: bool = False) -> SolverOutcome:
    if alpha < 0:
        raise ValueError("alpha must be non-negative")
    stats = SolveStats(max_calls=max_calls, watch_planarity=check_planarity)
    parts = []
    try:
        for comp in _component_graphs(g):
            w = _Work(comp)
            if kind == "decide":
                verdict, payload = _decide_top(w, alpha, _all_edges(w.adj), stats, False)
            elif kind == "decide-planar":
                verdict, payload = _decide_top(w, alpha, _all_edges(w.adj), stats, True)
            elif kind == "general":
                verdict, payload = _driver_basic(w, alpha, stats)
            elif kind == "improved":
                verdict, payload = _driver_improved(w, alpha, stats)
            else:
                verdict, payload = _driver_planar(w, alpha, stats, check_planarity)
            parts.append((verdict, payload))
            if verdict is NO:
                break
    except _OutOfCalls:
        stats.budget_exhausted = True
        out = SolverOutcome(UNDETERMINED)
        out.stats = stats
        return out
    out = _combine(g, parts)
    out.stats = stats
    return out


def _require_planar(g: Graph) -> None:
    if Rotation.of(g) is None:
        raise PreconditionError("planar routines need a planar graph")


def is_3_colorable(g: Graph, alpha: int, max_calls: int | None = None) -> SolverOutcome:
    """Decision routine: diamond exhaustion plus ``G + uv`` probes up to depth ``alpha``."""
    return _run(g, alpha, "decide", max_calls)


def is_3_colorable_planar(g: Graph, alpha: int, max_calls: int | None = None,
                          check_planarity: bool = False) -> SolverOutcome:
    """Decision routine probing ``G / xw`` for each tadpole instead of every non-edge."""
    _require_planar(g)
    return _run(g, alpha, "decide-planar", max_calls, check_planarity)


def general_3col(g: Graph, alpha: int, variant: str = "improved",
                 max_calls: int | None = None) -> SolverOutcome:
    """Coloring driver; ``variant="basic"`` selects the plain greedy-contraction loop."""
    if variant not in ("improved", "basic"):
        raise ValueError("variant is 'improved' or 'basic'")
    return _run(g, alpha, "improved" if variant == "improved" else "general", max_calls)


def general_3col_planar(g: Graph, alpha: int, max_calls: int | None = None,
                        check_planarity: bool = False) -> SolverOutcome:
    _require_planar(g)
    return _run(g, alpha, "planar", max_calls, check_planarity)


def solve(g: Graph, alpha: int, mode: str = "improved", max_calls: int | None = None,
          check_planarity: bool = False) -> SolverOutcome:
    if mode == "improved":
        return general_3col(g, alpha, "improved", max_calls)
    if mode == "general":
        return general_3col(g, alpha, "basic", max_calls)
    if mode == "planar":
        return general_3col_planar(g, alpha, max_calls, check_planarity)
    raise ValueError(f"unknown mode {mode!r}")


def bfs_3col(g: Graph, cfg: SolveConfig | None = None) -> tuple[SolverOutcome, ObservedAlpha]:
    """Raise alpha from ``cfg.alpha`` until an answer is certified or ``alpha_max`` is spent.

    ``cfg.max_calls`` bounds the decision calls of the whole loop; running out
    ends the loop early with the same ``alpha_max + 1`` sentinel.
    """
    cfg = cfg or SolveConfig()
    if cfg.mode == "planar":
        _require_planar(g)
    total = SolveStats(max_calls=cfg.max_calls)
    for alpha in range(cfg.alpha, cfg.alpha_max + 1):
        left = None if cfg.max_calls is None else cfg.max_calls - total.calls
        out = solve(g, alpha, cfg.mode, left, cfg.check_planarity)
        total.merge(out.stats)
        if out.verdict.determinate:
            out.stats = total
            return out, ObservedAlpha(alpha)
        if out.stats.budget_exhausted:
            break
    final = SolverOutcome(UNDETERMINED)
    final.stats = total
    return final, ObservedAlpha(cfg.alpha_max + 1, exceeded=True, out_of_calls=total.budget_exhausted)


def relabel(g: Graph, mapping: dict[int, int]) -> Graph:
    return Graph((mapping[v] for v in g.vertices()), ((mapping[u], mapping[v]) for u, v in g.edges()))


def observed_alpha(g: Graph, cfg: SolveConfig | None = None, shuffles: int = 0) -> ObservedAlpha:
    """Observed alpha under the given ordering, maxed over ``shuffles`` random relabelings."""
    cfg = cfg or SolveConfig()
    _, best = bfs_3col(g, cfg)
    rng = random.Random(cfg.rng_seed)
    vs = g.vertices()
    for _ in range(shuffles):
        perm = vs[:]
        rng.shuffle(perm)
        _, seen = bfs_3col(relabel(g, dict(zip(vs, perm))), cfg)
        if (seen.exceeded, seen.value) > (best.exceeded, best.value):
            best = seen
    return best
