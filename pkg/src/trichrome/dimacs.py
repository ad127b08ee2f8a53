"""DIMACS ``.col`` reading and writing.

Accepted lines: ``c`` comments, one ``p edge <n> <m>`` header, ``e <u> <v>``
edges and blank lines.  Vertices are 1..n.  Duplicate edges (in either
direction) are dropped with a warning; loops and out-of-range ids are errors.
"""
from __future__ import annotations

import logging

from .graph import Graph

log = logging.getLogger(__name__)


class DimacsError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


def parse_dimacs(text: str) -> Graph:
    n = None
    declared = 0
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise DimacsError("second problem line", lineno)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise DimacsError("expected 'p edge <n> <m>'", lineno)
            n, declared = _int(parts[2], lineno), _int(parts[3], lineno)
            if n < 0 or declared < 0:
                raise DimacsError("negative size", lineno)
        elif tag == "e":
            if n is None:
                raise DimacsError("edge before the problem line", lineno)
            if len(parts) != 3:
                raise DimacsError("expected 'e <u> <v>'", lineno)
            u, v = _int(parts[1], lineno), _int(parts[2], lineno)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise DimacsError(f"vertex {x} outside 1..{n}", lineno)
            if u == v:
                raise DimacsError(f"loop at vertex {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                log.warning("line %d: duplicate edge %d-%d ignored", lineno, u, v)
                continue
            seen.add(key)
            edges.append((u, v))
        else:
            raise DimacsError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise DimacsError("missing problem line")
    if declared != len(edges):
        log.warning("problem line declares %d edges, found %d distinct", declared, len(edges))
    return Graph(range(1, n + 1), edges)


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise DimacsError(f"not an integer: {token!r}", lineno) from None


def write_dimacs(g: Graph, comment: str | None = None) -> str:
    """Write vertices 1..n; the graph must already use exactly those ids."""
    n = g.n
    if g.vertices() != list(range(1, n + 1)):
        raise ValueError("DIMACS output needs vertices 1..n")
    lines = []
    if comment:
        lines.extend(f"c {line}" for line in comment.splitlines())
    lines.append(f"p edge {n} {g.m}")
    lines.extend(f"e {u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_dimacs(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_dimacs(fh.read())
