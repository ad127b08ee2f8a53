import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from trichrome.graph import Graph, MergePartition, add_edge, contract

settings.register_profile(
    "default", max_examples=150, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# one status line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)


def random_graph(n: int, d: float, rng: random.Random) -> Graph:
    """G(n, m) on vertices 1..n with m = round(d n / 2), capped at complete."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    m = min(len(pairs), round(d * n / 2))
    return Graph(range(1, n + 1), rng.sample(pairs, m))


@st.composite
def small_graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(range(1, n + 1), [p for p, keep in zip(pairs, mask) if keep])


def replay_final(g: Graph, cert):
    """Apply the top-level steps of a certificate with graph-core contraction."""
    h, p = g, MergePartition.identity(g)
    for step in cert.steps:
        h, p = contract(h, p, *step.pair)
    return h


def replay_nested(g: Graph, cert, path):
    """Graph on which the nested certificate at ``path`` is replayed."""
    from trichrome.certificates import NestedEdge

    h, p = g, MergePartition.identity(g)
    for depth, index in enumerate(path):
        for step in cert.steps[:index]:
            h, p = contract(h, p, *step.pair)
        step = cert.steps[index]
        if isinstance(step.why, NestedEdge):
            h = add_edge(h, *step.pair)
        else:
            x, _, _, w = step.why.tadpole
            h, p = contract(h, p, x, w)
        cert = step.why.cert
    return h, cert


@pytest.fixture
def rng():
    return random.Random(12345)
