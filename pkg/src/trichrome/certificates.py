"""Certificates for both answers and an independent replay verifier.

The verifier deliberately shares no code with :mod:`trichrome.graph` or the
solver: it rebuilds adjacency from the input graph and re-implements the
contraction and every witness check on its own.

Survivor ids
    Replaying a contraction retires both ids and allocates a fresh survivor
    from a counter that starts at the graph's ``next_id`` (one past the
    largest vertex id for freshly built graphs).  A nested certificate is
    replayed on a copy that inherits the counter at that point; for a tadpole
    justification the copy first spends one id on the contraction of ``x``
    and ``w``.

Soundness of the three justifications, for a step contracting ``(u, v)``:

* ``diamond z w``: ``u, v`` both see the adjacent pair ``z, w``, so any
  3-coloring gives ``u`` and ``v`` the single color left over.
* ``nested-edge``: the nested certificate shows ``G + uv`` is not
  3-colorable, so every 3-coloring of ``G`` already colors ``u, v`` alike.
* ``nested-tadpole x y z w``: ``w`` sees ``z`` only, so it takes the color of
  ``x`` or of ``y``.  The nested certificate rules out ``G / xw``, leaving
  ``w`` with the color of ``y``; the step must contract ``(y, w)``.

Text format (one item per line, nested blocks indented two spaces)::

    cert uncol <steps>
    step <u> <v> diamond <z> <w>
    step <u> <v> nested-edge {
      cert uncol <steps>
      ...
      k4 <a> <b> <c> <d>
    }
    step <u> <v> nested-tadpole <x> <y> <z> <w> {
      ...
    }
    k4 <a> <b> <c> <d>

    cert col
    class 1 <v> <v> ...
    class 2 <v> ...
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Union


class Verdict(enum.Enum):
    NO = 0
    YES = 1
    UNDETERMINED = math.inf

    def __str__(self) -> str:
        return {0: "0", 1: "1"}.get(self.value, "inf")  # type: ignore[arg-type]

    @property
    def determinate(self) -> bool:
        return self is not Verdict.UNDETERMINED


@dataclass(frozen=True)
class Diamond:
    spine: tuple[int, int]


@dataclass(frozen=True)
class NestedEdge:
    cert: UncolorabilityCertificate


@dataclass(frozen=True)
class NestedTadpole:
    tadpole: tuple[int, int, int, int]
    cert: UncolorabilityCertificate


Justification = Union[Diamond, NestedEdge, NestedTadpole]


@dataclass(frozen=True)
class ContractionStep:
    pair: tuple[int, int]
    why: Justification


@dataclass(frozen=True)
class UncolorabilityCertificate:
    steps: tuple[ContractionStep, ...]
    k4: tuple[int, int, int, int]


@dataclass(frozen=True)
class ColoringCertificate:
    """Up to three color classes, stored canonically (sorted, by least member)."""

    classes: tuple[tuple[int, ...], ...]

    @classmethod
    def from_classes(cls, classes: Iterable[Iterable[int]]) -> ColoringCertificate:
        canon = [tuple(sorted(c)) for c in classes]
        return cls(tuple(sorted((c for c in canon if c), key=lambda c: c[0])))

    @classmethod
    def from_mapping(cls, colors: dict[int, int]) -> ColoringCertificate:
        groups: dict[int, list[int]] = {}
        for v, c in colors.items():
            groups.setdefault(c, []).append(v)
        return cls.from_classes(groups.values())

    def color_of(self) -> dict[int, int]:
        return {v: i for i, c in enumerate(self.classes) for v in c}


Payload = Union[ColoringCertificate, UncolorabilityCertificate, None]


@dataclass
class SolverOutcome:
    verdict: Verdict
    payload: Payload = None
    stats: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        expected = {Verdict.NO: UncolorabilityCertificate, Verdict.YES: ColoringCertificate}
        kind = expected.get(self.verdict)
        if kind is None:
            if self.payload is not None:
                raise ValueError("undetermined outcome carries no payload")
        elif not isinstance(self.payload, kind):
            raise ValueError(f"verdict {self.verdict} requires a {kind.__name__}")


def certificate_size(cert: UncolorabilityCertificate) -> int:
    total = 0
    for step in cert.steps:
        total += 1
        if isinstance(step.why, (NestedEdge, NestedTadpole)):
            total += certificate_size(step.why.cert)
    return total


# -- verification --------------------------------------------------------------


@dataclass
class Check:
    ok: bool
    reason: str = ""
    where: tuple[int, ...] = ()
    ops: int = 0

    def __bool__(self) -> bool:
        return self.ok


class _Reject(Exception):
    def __init__(self, reason: str, where: tuple[int, ...]):
        super().__init__(reason)
        self.reason = reason
        self.where = where


class _Replay:
    """Private adjacency replica with an elementary-operation counter."""

    def __init__(self, adj: dict[int, set[int]], next_id: int, meter: list[int]):
        self.adj = adj
        self.next_id = next_id
        self.meter = meter

    def fork(self) -> _Replay:
        self.meter[0] += len(self.adj) + sum(len(nb) for nb in self.adj.values())
        return _Replay({v: set(nb) for v, nb in self.adj.items()}, self.next_id, self.meter)

    def live(self, v: int) -> bool:
        self.meter[0] += 1
        return v in self.adj

    def adjacent(self, u: int, v: int) -> bool:
        self.meter[0] += 1
        return v in self.adj.get(u, ())

    def merge(self, u: int, v: int) -> int:
        s = self.next_id
        self.next_id += 1
        nu = self.adj.pop(u)
        nv = self.adj.pop(v)
        both = nu | nv
        self.meter[0] += len(nu) + len(nv) + len(both)
        for x in both:
            nb = self.adj[x]
            nb.discard(u)
            nb.discard(v)
            nb.add(s)
        self.adj[s] = both
        return s

    def join(self, u: int, v: int) -> None:
        self.meter[0] += 2
        self.adj[u].add(v)
        self.adj[v].add(u)


def _replay(rp: _Replay, cert: UncolorabilityCertificate, where: tuple[int, ...]) -> None:
    for i, step in enumerate(cert.steps):
        here = where + (i,)
        u, v = step.pair
        if u == v or not rp.live(u) or not rp.live(v):
            raise _Reject(f"pair ({u}, {v}) is not two live vertices", here)
        if rp.adjacent(u, v):
            raise _Reject(f"pair ({u}, {v}) is adjacent", here)
        why = step.why
        if isinstance(why, Diamond):
            z, w = why.spine
            if len({u, v, z, w}) != 4 or not rp.live(z) or not rp.live(w):
                raise _Reject("diamond spine must be two further live vertices", here)
            for a, b in ((z, w), (u, z), (u, w), (v, z), (v, w)):
                if not rp.adjacent(a, b):
                    raise _Reject(f"diamond edge {a}-{b} missing", here)
        elif isinstance(why, NestedEdge):
            sub = rp.fork()
            sub.join(u, v)
            _replay(sub, why.cert, here)
        elif isinstance(why, NestedTadpole):
            x, y, z, w = why.tadpole
            if {u, v} != {y, w}:
                raise _Reject("tadpole step must contract the second triangle vertex with the tail", here)
            if len({x, y, z, w}) != 4 or not all(rp.live(t) for t in (x, y, z, w)):
                raise _Reject("tadpole needs four distinct live vertices", here)
            for a, b in ((x, y), (y, z), (x, z), (z, w)):
                if not rp.adjacent(a, b):
                    raise _Reject(f"tadpole edge {a}-{b} missing", here)
            if rp.adjacent(x, w):
                raise _Reject(f"tadpole tail {w} is adjacent to {x}", here)
            sub = rp.fork()
            sub.merge(x, w)
            _replay(sub, why.cert, here)
        else:
            raise _Reject(f"unknown justification {why!r}", here)
        rp.merge(u, v)
    quad = cert.k4
    if len(quad) != 4 or len(set(quad)) != 4:
        raise _Reject("k4 must name four distinct vertices", where)
    for a in quad:
        if not rp.live(a):
            raise _Reject(f"k4 vertex {a} is not live", where)
    for i in range(4):
        for j in range(i + 1, 4):
            if not rp.adjacent(quad[i], quad[j]):
                raise _Reject(f"k4 edge {quad[i]}-{quad[j]} missing", where)


def check_uncolorability(g, cert: UncolorabilityCertificate) -> Check:
    meter = [0]
    adj = {v: set(g.neighbors(v)) for v in g.vertices()}
    meter[0] += len(adj) + sum(len(nb) for nb in adj.values())
    try:
        _replay(_Replay(adj, g.next_id, meter), cert, ())
    except _Reject as exc:
        return Check(False, exc.reason, exc.where, meter[0])
    return Check(True, ops=meter[0])


def verify_uncolorability(g, cert: UncolorabilityCertificate) -> bool:
    return check_uncolorability(g, cert).ok


def verification_step_count(g, cert: UncolorabilityCertificate) -> int:
    return check_uncolorability(g, cert).ops


def check_coloring(g, cert: ColoringCertificate) -> Check:
    classes = cert.classes
    ops = 0
    if len(classes) > 3:
        return Check(False, f"{len(classes)} classes", ops=ops)
    owner: dict[int, int] = {}
    for i, members in enumerate(classes):
        for v in members:
            ops += 1
            if v in owner:
                return Check(False, f"vertex {v} in two classes", ops=ops)
            owner[v] = i
    vertices = g.vertices()
    if len(owner) != len(vertices) or any(v not in owner for v in vertices):
        return Check(False, "classes do not cover exactly the vertex set", ops=ops + len(vertices))
    for u, v in g.edges():
        ops += 1
        if owner[u] == owner[v]:
            return Check(False, f"edge {u}-{v} inside class {owner[u] + 1}", ops=ops)
    return Check(True, ops=ops)


def verify_coloring(g, cert: ColoringCertificate) -> bool:
    return check_coloring(g, cert).ok


# -- text format ---------------------------------------------------------------


class CertificateFormatError(ValueError):
    pass


def _write_uncol(cert: UncolorabilityCertificate, indent: str, out: list[str]) -> None:
    out.append(f"{indent}cert uncol {len(cert.steps)}")
    for step in cert.steps:
        u, v = step.pair
        why = step.why
        if isinstance(why, Diamond):
            out.append(f"{indent}step {u} {v} diamond {why.spine[0]} {why.spine[1]}")
            continue
        if isinstance(why, NestedEdge):
            out.append(f"{indent}step {u} {v} nested-edge {{")
        else:
            x, y, z, w = why.tadpole
            out.append(f"{indent}step {u} {v} nested-tadpole {x} {y} {z} {w} {{")
        _write_uncol(why.cert, indent + "  ", out)
        out.append(f"{indent}}}")
    out.append(f"{indent}k4 " + " ".join(map(str, cert.k4)))


def write_certificate(cert: ColoringCertificate | UncolorabilityCertificate) -> str:
    out: list[str] = []
    if isinstance(cert, ColoringCertificate):
        out.append("cert col")
        for i, members in enumerate(cert.classes, 1):
            out.append(" ".join(["class", str(i), *map(str, members)]))
    else:
        _write_uncol(cert, "", out)
    return "\n".join(out) + "\n"


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise CertificateFormatError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def _parse_uncol(lines: list[tuple[int, list[str]]], pos: int) -> tuple[UncolorabilityCertificate, int]:
    lineno, head = lines[pos]
    if head[:2] != ["cert", "uncol"] or len(head) != 3:
        raise CertificateFormatError(f"line {lineno}: expected 'cert uncol <steps>'")
    (declared,) = _ints(head[2:], lineno)
    pos += 1
    steps = []
    while pos < len(lines) and lines[pos][1][0] == "step":
        lineno, tok = lines[pos]
        if len(tok) < 4:
            raise CertificateFormatError(f"line {lineno}: truncated step")
        u, v = _ints(tok[1:3], lineno)
        kind = tok[3]
        if kind == "diamond":
            if len(tok) != 6:
                raise CertificateFormatError(f"line {lineno}: diamond takes two spine vertices")
            z, w = _ints(tok[4:6], lineno)
            steps.append(ContractionStep((u, v), Diamond((z, w))))
            pos += 1
            continue
        if kind == "nested-edge" and tok[4:] == ["{"]:
            extra: list[int] = []
        elif kind == "nested-tadpole" and len(tok) == 9 and tok[8] == "{":
            extra = _ints(tok[4:8], lineno)
        else:
            raise CertificateFormatError(f"line {lineno}: malformed step")
        inner, pos = _parse_uncol(lines, pos + 1)
        if pos >= len(lines) or lines[pos][1] != ["}"]:
            raise CertificateFormatError(f"line {lineno}: unterminated nested block")
        pos += 1
        why = NestedEdge(inner) if kind == "nested-edge" else NestedTadpole(tuple(extra), inner)  # type: ignore[arg-type]
        steps.append(ContractionStep((u, v), why))
    if pos >= len(lines) or lines[pos][1][0] != "k4":
        raise CertificateFormatError(f"line {lines[min(pos, len(lines) - 1)][0]}: expected 'k4'")
    lineno, tok = lines[pos]
    quad = _ints(tok[1:], lineno)
    if len(quad) != 4:
        raise CertificateFormatError(f"line {lineno}: k4 takes four vertices")
    if declared != len(steps):
        raise CertificateFormatError(f"line {lineno}: header declares {declared} steps, found {len(steps)}")
    return UncolorabilityCertificate(tuple(steps), tuple(quad)), pos + 1  # type: ignore[arg-type]


def parse_certificate(text: str) -> ColoringCertificate | UncolorabilityCertificate:
    lines = [(i, ln.split()) for i, ln in enumerate(text.splitlines(), 1) if ln.strip()]
    if not lines:
        raise CertificateFormatError("empty certificate")
    head = lines[0][1]
    if head == ["cert", "col"]:
        classes = []
        for lineno, tok in lines[1:]:
            if tok[0] != "class" or len(tok) < 2:
                raise CertificateFormatError(f"line {lineno}: expected 'class <id> <vertices>'")
            classes.append(_ints(tok[2:], lineno))
        return ColoringCertificate.from_classes(classes)
    cert, pos = _parse_uncol(lines, 0)
    if pos != len(lines):
        raise CertificateFormatError(f"line {lines[pos][0]}: trailing content")
    return cert
