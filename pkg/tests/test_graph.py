from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flipforge.graph import (
    ColouredGraph,
    GraphError,
    bfs_distances,
    closed_neighbourhood,
    colour_counts,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    girth,
    path_graph,
    vertex_stats,
)

import oracles


@st.composite
def coloured_graphs(draw, max_n=9, max_k=3):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_k))
    seed = draw(st.integers(0, 2**31))
    p = draw(st.floats(0.0, 1.0))
    return oracles.random_coloured_graph(n, k, p, random.Random(seed))


def test_canonical_form_ignores_input_order():
    a = ColouredGraph.from_edges(4, 2, [(0, 1, 1), (3, 2, 2), (1, 2, 1)])
    b = ColouredGraph.from_edges(4, 2, [(2, 3, 2), (2, 1, 1), (1, 0, 1)])
    assert a == b and hash(a) == hash(b)
    assert list(a.edges()) == [(0, 1, 1), (1, 2, 1), (2, 3, 2)]


@pytest.mark.parametrize("edges, msg", [
    ([(0, 0, 1)], "self-loop"),
    ([(0, 1, 1), (1, 0, 2)], "duplicate edge"),
    ([(0, 5, 1)], "out of range"),
    ([(0, 1, 3)], "colour out of range"),
])
def test_rejects_invalid_edges(edges, msg):
    with pytest.raises(GraphError, match=msg):
        ColouredGraph.from_edges(3, 2, edges)


def test_arrays_are_read_only():
    g = complete_graph(4)
    with pytest.raises(ValueError):
        g.edge_arrays[0][0] = 3


def test_small_builders():
    assert complete_graph(5).m == 10
    assert complete_bipartite(2, 3).m == 6
    assert set(cycle_graph(6).degrees()) == {2}
    assert path_graph(4).m == 3
    assert empty_graph(3).m == 0
    assert girth(cycle_graph(7)) == 7
    assert girth(path_graph(5)) == float("inf")
    assert girth(complete_bipartite(3, 3)) == 4


def test_k4_single_colour_query():
    g = complete_graph(4, colour=1, k=2)
    assert closed_neighbourhood(g, 0, 1) == frozenset(range(4))
    assert colour_counts(g, closed_neighbourhood(g, 0)) == (6, 0)


def test_c5_two_colours():
    g = ColouredGraph.from_edges(5, 2, [(i, (i + 1) % 5, 1 + i % 2) for i in range(4)] + [(0, 4, 1)])
    s = vertex_stats(g, 2)
    assert s.deg_by_colour == (1, 1)
    assert s.closed_count_by_colour == (1, 1)
    assert s.open_count_by_colour == (0, 0)


def test_vertex_query_out_of_range():
    with pytest.raises(GraphError):
        closed_neighbourhood(complete_graph(3), 3)


@given(coloured_graphs())
def test_degree_sum_is_twice_edge_count(g):
    assert int(g.degrees().sum()) == 2 * g.m
    assert np.array_equal(g.colour_degrees().sum(axis=0), 2 * g.colour_totals())


@given(coloured_graphs(), st.integers(1, 3))
def test_closed_counts_match_oracle(g, t):
    for v in range(g.n):
        assert colour_counts(g, closed_neighbourhood(g, v, t)) == oracles.closed_counts(g, v, t)


@given(coloured_graphs())
def test_bfs_distance_balls(g):
    d = bfs_distances(g, 0)
    for t in (1, 2):
        assert closed_neighbourhood(g, 0, t) == frozenset(int(x) for x in np.flatnonzero((d >= 0) & (d <= t)))


@given(coloured_graphs())
def test_restrict_colours_keeps_selected_edges(g):
    if g.k < 2:
        return
    h = g.restrict_colours([g.k])
    assert h.k == 1
    assert h.m == int(g.colour_totals()[g.k - 1])


@given(coloured_graphs(max_n=10, max_k=1))
def test_girth_matches_edge_deletion_oracle(g):
    assert girth(g) == oracles.girth(g)
