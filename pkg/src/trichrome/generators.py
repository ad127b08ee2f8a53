"""Seeded random instance generators.

Every graph is on vertices 1..n.  The same ``(seed, index)`` always gives the
same graph; per-instance seeds are derived by hashing so that instance ``i``
does not depend on how many instances came before it.
"""
from __future__ import annotations

import hashlib
import json
import random
from dataclasses import asdict, dataclass
from pathlib import Path

from .graph import Graph, contains_k4
from .planarity import Rotation

MODELS = ("pseudo_planar", "planar_4regular", "er_connected")
ALIASES = {"er": "er_connected", "planar4reg": "planar_4regular", "pseudoplanar": "pseudo_planar"}

# Probability slots of the 4-regular growth operations, in order:
#   split2     two disjoint edges of a face replaced by one new vertex (+1)
#   split3     three disjoint edges of a face replaced by two adjacent vertices (+2)
#   wheel      a vertex replaced by a 4-wheel whose rim takes its edges (+4)
#   antiprism  an antiprism band inserted inside a face of length L (+L)
OP_NAMES = ("split2", "split3", "wheel", "antiprism")
DEFAULT_OP_PROBS = (0.80, 0.05, 0.10, 0.05)


class GeneratorError(ValueError):
    pass


@dataclass(frozen=True)
class GenSpec:
    model: str
    n: int
    avg_degree: float | None
    seed: int
    index: int = 0
    op_probs: tuple[float, float, float, float] | None = None

    def __post_init__(self):
        if self.model not in MODELS:
            raise GeneratorError(f"unknown model {self.model!r}; choose from {MODELS}")
        if self.op_probs is not None:
            object.__setattr__(self, "op_probs", tuple(float(p) for p in self.op_probs))
            _check_probs(self.op_probs)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> GenSpec:
        return cls(**json.loads(text))


def _check_probs(probs) -> None:
    if len(probs) != 4 or any(p < 0 for p in probs) or abs(sum(probs) - 1) > 1e-9:
        raise GeneratorError("op_probs must be four non-negative numbers summing to 1")


def derive_seed(seed: int, index: int | str) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _rng(seed: int, index: int) -> random.Random:
    return random.Random(derive_seed(seed, index))


def _edge_target(n: int, d: float) -> int:
    return int(d * n // 2)


# -- Erdos-Renyi (connected) ------------------------------------------------------------


def er_connected(n: int, d: float, seed: int, index: int = 0) -> Graph:
    """Connected G(n, m) with ``m = floor(d n / 2)``: a random spanning path plus uniform extra edges."""
    m = _edge_target(n, d)
    if n < 1:
        raise GeneratorError("n must be positive")
    if m < n - 1 or m > n * (n - 1) // 2:
        raise GeneratorError(f"cannot place {m} edges on {n} connected vertices")
    rng = _rng(seed, index)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    edges = {(min(a, b), max(a, b)) for a, b in zip(order, order[1:])}
    while len(edges) < m:
        a, b = rng.sample(range(1, n + 1), 2)
        edges.add((min(a, b), max(a, b)))
    return Graph(range(1, n + 1), sorted(edges))


# -- pseudo-planar ---------------------------------------------------------------------


def _stacked_triangulation(n: int, rng: random.Random) -> list[tuple[int, int]]:
    edges = [(1, 2), (1, 3), (2, 3)]
    faces = [(1, 2, 3), (1, 2, 3)]  # the two sides of the starting triangle
    for v in range(4, n + 1):
        k = rng.randrange(len(faces))
        a, b, c = faces[k]
        faces[k] = (a, b, v)
        faces.append((b, c, v))
        faces.append((a, c, v))
        edges += [(a, v), (b, v), (c, v)]
    return edges


def _components(n: int, edges: list[tuple[int, int]]) -> list[int]:
    parent = list(range(n + 1))

    def root(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        parent[root(a)] = root(b)
    return [root(v) for v in range(n + 1)]


def _is_bridge(n: int, edges: list[tuple[int, int]], k: int) -> bool:
    rest = edges[:k] + edges[k + 1:]
    comp = _components(n, rest)
    a, b = edges[k]
    return comp[a] != comp[b]


def _connect(n: int, kept: list[tuple[int, int]], dropped: list[tuple[int, int]],
             rng: random.Random) -> list[tuple[int, int]]:
    """Swap edges until connected, keeping the edge count fixed."""
    kept = kept[:]
    pool = dropped[:]
    rng.shuffle(pool)
    while True:
        comp = _components(n, kept)
        if len({comp[v] for v in range(1, n + 1)}) == 1:
            return kept
        joiner = next(e for e in pool if comp[e[0]] != comp[e[1]])
        pool.remove(joiner)
        order = rng.sample(range(len(kept)), len(kept))
        k = next((k for k in order if not _is_bridge(n, kept, k)), None)
        if k is None:
            raise GeneratorError("cannot keep the graph connected at this density")
        pool.append(kept.pop(k))
        kept.append(joiner)


def pseudo_planar(n: int, d: float, seed: int, index: int = 0, attempts: int = 100) -> Graph:
    """Connected planar graph with ``floor(d n / 2)`` edges drawn from a stacked triangulation.

    Up to ``attempts`` draws are made looking for a K4-free sample; if none is
    found the last draw is returned.
    """
    if n < 3:
        raise GeneratorError("n must be at least 3")
    if not 2 <= d <= 6 - 12 / n:
        raise GeneratorError(f"average degree {d} outside [2, {6 - 12 / n:.3f}] for n={n}")
    m = _edge_target(n, d)
    if m < n - 1 or m > 3 * n - 6:
        raise GeneratorError(f"{m} edges is outside the planar connected range for n={n}")
    rng = _rng(seed, index)
    g = None
    for _ in range(attempts):
        tri = _stacked_triangulation(n, rng)
        rng.shuffle(tri)
        kept = _connect(n, tri[:m], tri[m:], rng)
        g = Graph(range(1, n + 1), kept)
        if contains_k4(g) is None:
            return g
    assert g is not None
    return g


# -- 4-regular planar ------------------------------------------------------------------


def _octahedron_rotation() -> Rotation:
    # poles 1 and 6 around the equator 2, 3, 4, 5
    return Rotation({
        1: [2, 3, 4, 5],
        6: [5, 4, 3, 2],
        2: [1, 5, 6, 3],
        3: [1, 2, 6, 4],
        4: [1, 3, 6, 5],
        5: [1, 4, 6, 2],
    })


def _replace(ring: list[int], old: int, new: int) -> None:
    ring[ring.index(old)] = new


def _simple_faces(rot: Rotation) -> list[list[int]]:
    return [f for f in rot.faces() if len(set(f)) == len(f)]


def _op_split2(rot: Rotation, face: list[int], rng: random.Random, x: int) -> None:
    L = len(face)
    i = rng.randrange(L)
    j = (i + rng.randrange(2, L - 1)) % L
    a, b = face[i], face[(i + 1) % L]
    c, d = face[j], face[(j + 1) % L]
    cw = rot.cw
    _replace(cw[a], b, x)
    _replace(cw[b], a, x)
    _replace(cw[c], d, x)
    _replace(cw[d], c, x)
    cw[x] = [a, b, c, d]


def _op_split3(rot: Rotation, face: list[int], rng: random.Random, x: int) -> None:
    L = len(face)
    while True:
        picks = sorted(rng.sample(range(L), 3))
        if all((picks[(k + 1) % 3] - picks[k]) % L >= 2 for k in range(3)):
            break
    i, j, k = picks
    a, b = face[i], face[(i + 1) % L]
    c, d = face[j], face[(j + 1) % L]
    e, f = face[k], face[(k + 1) % L]
    y = x + 1
    cw = rot.cw
    _replace(cw[a], b, y)
    _replace(cw[b], a, x)
    _replace(cw[c], d, x)
    _replace(cw[d], c, x)
    _replace(cw[e], f, y)
    _replace(cw[f], e, y)
    cw[x] = [b, c, d, y]
    cw[y] = [e, f, a, x]


def _op_wheel(rot: Rotation, v: int, x: int) -> None:
    cw = rot.cw
    ring = cw.pop(v)
    rim = [x, x + 1, x + 2, x + 3]
    hub = x + 4
    for i in range(4):
        _replace(cw[ring[i]], v, rim[i])
        cw[rim[i]] = [ring[i], rim[(i + 1) % 4], hub, rim[i - 1]]
    cw[hub] = rim[:]
    # keep ids contiguous: move the hub into the freed slot
    _rename(rot, hub, v)


def _op_antiprism(rot: Rotation, face: list[int], x: int) -> None:
    L = len(face)
    cw = rot.cw
    xs = [x + i for i in range(L)]
    for i in range(L):
        f, g = face[i], face[(i + 1) % L]
        _replace(cw[f], g, xs[i])
        _replace(cw[g], f, xs[i])
    for i in range(L):
        cw[xs[i]] = [face[i], face[(i + 1) % L], xs[(i + 1) % L], xs[i - 1]]


def _rename(rot: Rotation, old: int, new: int) -> None:
    cw = rot.cw
    ring = cw.pop(old)
    for u in ring:
        _replace(cw[u], old, new)
    cw[new] = ring


def _reachable(n: int) -> bool:
    # the octahedron has only triangular faces, so the first step adds 3 or 4
    return n == 6 or n >= 9


def planar_4regular(n: int, seed: int, index: int = 0,
                    op_probs: tuple[float, float, float, float] = DEFAULT_OP_PROBS) -> Graph:
    """Simple connected 4-regular planar graph on exactly n vertices, grown from the octahedron.

    Operations that would overshoot n are skipped and the remaining
    probabilities renormalized.
    """
    _check_probs(op_probs)
    weight = dict(zip(OP_NAMES, op_probs))
    if not _reachable(n):
        raise GeneratorError(f"no 4-regular planar graph is generated for n={n}")
    rng = _rng(seed, index)
    rot = _octahedron_rotation()
    nv = 6
    while nv < n:
        room = n - nv
        faces = _simple_faces(rot)
        options: dict[str, list] = {}
        big4 = [f for f in faces if len(f) >= 4]
        if room >= 1 and big4:
            options["split2"] = big4
        big6 = [f for f in faces if len(f) >= 6]
        if room >= 2 and big6:
            options["split3"] = big6
        if room >= 4:
            options["wheel"] = [None]
        fits = [f for f in faces if len(f) <= room]
        if fits:
            options["antiprism"] = fits
        if not options:
            raise GeneratorError(f"stuck at {nv} vertices on the way to {n}")
        names = [k for k in OP_NAMES if k in options and weight[k] > 0]
        if not names:
            names = [k for k in OP_NAMES if k in options]
            op = rng.choice(names)
        else:
            op = rng.choices(names, weights=[weight[k] for k in names])[0]
        x = nv + 1
        if op == "split2":
            _op_split2(rot, rng.choice(options[op]), rng, x)
            nv += 1
        elif op == "split3":
            _op_split3(rot, rng.choice(options[op]), rng, x)
            nv += 2
        elif op == "wheel":
            _op_wheel(rot, rng.randrange(1, nv + 1), x)
            nv += 4
        else:
            face = rng.choice(options[op])
            _op_antiprism(rot, face, x)
            nv += len(face)
    return Graph.from_adjacency({v: set(nb) for v, nb in rot.cw.items()})


# -- dispatch and files ------------------------------------------------------------------


def generate(spec: GenSpec) -> Graph:
    if spec.model == "er_connected":
        return er_connected(spec.n, _need_degree(spec), spec.seed, spec.index)
    if spec.model == "pseudo_planar":
        return pseudo_planar(spec.n, _need_degree(spec), spec.seed, spec.index)
    if spec.model == "planar_4regular":
        return planar_4regular(spec.n, spec.seed, spec.index, spec.op_probs or DEFAULT_OP_PROBS)
    raise GeneratorError(f"unknown model {spec.model!r}; choose from {MODELS}")


def canonical_model(name: str) -> str:
    model = ALIASES.get(name, name)
    if model not in MODELS:
        raise GeneratorError(f"unknown model {name!r}; choose from {MODELS + tuple(ALIASES)}")
    return model


def _need_degree(spec: GenSpec) -> float:
    if spec.avg_degree is None:
        raise GeneratorError(f"model {spec.model} needs an average degree")
    return spec.avg_degree


def instance_name(spec: GenSpec) -> str:
    return f"{spec.model}_{spec.n}_{spec.seed}_{spec.index}"


def write_instance(spec: GenSpec, g: Graph, directory: Path) -> Path:
    from .dimacs import write_dimacs

    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{instance_name(spec)}.col"
    path.write_text(write_dimacs(g, comment=instance_name(spec)))
    path.with_suffix(".json").write_text(spec.to_json() + "\n")
    return path
