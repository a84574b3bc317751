from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, strategies as st

from flipforge.graph import ColouredGraph, complete_graph
from flipforge.io import GraphFormatError, export_dot, graph_from_dict, graph_to_dict, load_graph, parse_edge_list, save_graph

import oracles


@given(st.integers(1, 12), st.integers(1, 4), st.integers(0, 10**6), st.sampled_from([".json", ".el"]))
def test_round_trip(tmp_path_factory, n, k, seed, suffix):
    g = oracles.random_coloured_graph(n, k, 0.4, random.Random(seed))
    path = tmp_path_factory.mktemp("rt") / f"g{suffix}"
    save_graph(g, path)
    assert load_graph(path) == g


def test_save_is_byte_identical(tmp_path):
    g = complete_graph(6, colour=2, k=3)
    a, b = tmp_path / "a.el", tmp_path / "b.el"
    save_graph(g, a)
    save_graph(ColouredGraph.from_edges(6, 3, reversed(list(g.edges()))), b)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("6 3\n0 1 2\n")


def test_comments_and_blank_lines():
    g = parse_edge_list("# header next\n3 2\n\n0 1 1  # first\n1 2 2\n")
    assert list(g.edges()) == [(0, 1, 1), (1, 2, 2)]


@pytest.mark.parametrize("text, msg", [
    ("3\n0 1 1\n", "malformed header at line 1"),
    ("3 2\n0 1 1\n1 0 2\n", "duplicate edge at line 3"),
    ("3 2\n0 0 1\n", "self-loop at line 2"),
    ("3 2\n0 1 5\n", "colour out of range at line 2"),
    ("3 2\n0 7 1\n", "vertex out of range at line 2"),
    ("3 2\n0 x 1\n", "line 2"),
])
def test_parse_errors_name_the_line(text, msg):
    with pytest.raises(GraphFormatError, match=msg):
        parse_edge_list(text)


def test_json_dict_validation():
    g = complete_graph(3, k=2)
    assert graph_from_dict(graph_to_dict(g)) == g
    with pytest.raises(GraphFormatError):
        graph_from_dict({"n": 3, "k": 2, "edges": [[0, 1]]})


def test_malformed_json_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{\"n\": 3,\n")
    with pytest.raises(GraphFormatError, match="line"):
        load_graph(p)


def test_dot_export(tmp_path):
    g = ColouredGraph.from_edges(3, 4, [(0, 1, 1), (1, 2, 2), (0, 2, 4)])
    p = tmp_path / "g.dot"
    export_dot(g, p)
    text = p.read_text()
    assert 'color="blue"' in text and 'color="red"' in text and 'color="orange"' in text
    assert text.startswith("graph G {")


def test_graph_json_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    from flipforge.schemas import load_schema
    p = tmp_path / "g.json"
    save_graph(complete_graph(4, k=2), p)
    jsonschema.validate(json.loads(p.read_text()), load_schema("graph"))
