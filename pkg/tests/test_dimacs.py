import logging

import pytest
from hypothesis import given

from trichrome import named
from trichrome.dimacs import DimacsError, parse_dimacs, read_dimacs, write_dimacs
from trichrome.graph import Graph

from conftest import small_graphs


@given(small_graphs(max_n=12))
def test_round_trip(g):
    text = write_dimacs(g, comment="two\nlines")
    h = parse_dimacs(text)
    assert h == g
    assert write_dimacs(h, comment="two\nlines") == text


def test_accepts_comments_blank_lines_and_col_header(tmp_path):
    text = "c hello\n\np col 4 3\ne 1 2\ne 2 3\nc mid\ne 3 4\n"
    path = tmp_path / "g.col"
    path.write_text(text)
    assert read_dimacs(path) == named.path(4)


def test_duplicate_edges_are_dropped_with_a_warning(caplog):
    with caplog.at_level(logging.WARNING):
        g = parse_dimacs("p edge 3 3\ne 1 2\ne 2 1\ne 2 3\n")
    assert g.m == 2 and "duplicate" in caplog.text and "declares 3" in caplog.text


@pytest.mark.parametrize("text, where", [
    ("e 1 2\n", "before the problem line"),
    ("p edge 3 1\ne 1 1\n", "loop"),
    ("p edge 3 1\ne 1 4\n", "outside"),
    ("p edge 3\n", "expected"),
    ("p edge 3 1\np edge 3 1\n", "second problem"),
    ("p edge 3 1\ne 1 x\n", "not an integer"),
    ("p edge 3 1\nx 1 2\n", "unknown line"),
    ("c nothing\n", "missing problem"),
])
def test_malformed_input(text, where):
    with pytest.raises(DimacsError, match=where):
        parse_dimacs(text)


def test_writer_needs_consecutive_ids():
    with pytest.raises(ValueError):
        write_dimacs(Graph([1, 3], [(1, 3)]))
