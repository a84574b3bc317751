from __future__ import annotations

import random
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from flipforge.constructions import construct_rb
from flipforge.graph import (
    ColouredGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
)
from flipforge.products import (
    FlipAssemblyError,
    ProductError,
    ProductLabelling,
    cartesian_product,
    ccp_flip_assemble,
    compose_flip,
    strong_product,
)
from flipforge.verification import neighbourhood_counts, verify_flip

import oracles

small_graph = st.builds(
    lambda n, k, p, seed: oracles.random_coloured_graph(n, k, p, random.Random(seed)),
    st.integers(1, 5), st.just(3), st.floats(0, 1), st.integers(0, 2**31),
)


@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_labelling_bijective(orders, data):
    lab = ProductLabelling(tuple(orders))
    i = data.draw(st.integers(0, lab.size - 1))
    assert lab.flatten(lab.unflatten(i)) == i


def test_labelling_rejects_bad_coordinates():
    with pytest.raises(ProductError):
        ProductLabelling((2, 3)).flatten((2, 0))


def test_k2_box_k2_is_c4():
    g = cartesian_product([complete_graph(2), complete_graph(2)])
    assert g.m == 4 and set(g.degrees()) == {2}
    assert set(g.edges()) == {(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)}


def test_k3_box_p3_middle_column():
    g = cartesian_product([complete_graph(3, colour=1, k=2), path_graph(3, colour=2, k=2)], k=2)
    lab = ProductLabelling((3, 3))
    counts = neighbourhood_counts(g, 1)
    for u in range(3):
        v = lab.flatten((u, 1))
        assert tuple(g.colour_degrees()[v]) == (2, 2)
        assert tuple(counts[v, 0]) == (3, 2)


def test_k55_box_k4():
    g = cartesian_product([complete_bipartite(5, 5, colour=2, k=2), complete_graph(4, colour=1, k=2)], k=2)
    rep = verify_flip(g)
    assert rep.degrees == (3, 5) and rep.uniform_counts() == [(6, 5)]


def test_product_errors():
    with pytest.raises(ProductError):
        cartesian_product([])
    with pytest.raises(ProductError):
        cartesian_product([complete_graph(2, colour=3)], k=2)


@given(st.lists(small_graph, min_size=1, max_size=3))
def test_cartesian_matches_definition(gs):
    assert cartesian_product(gs, k=3) == oracles.cartesian_by_definition(gs, 3)


@given(small_graph, small_graph)
def test_strong_matches_definition(h, kk):
    assert strong_product(h, kk, k=3) == oracles.strong_by_definition(h, kk, 3)


@given(small_graph, small_graph)
def test_strong_degree_and_edge_identities(h, kk):
    g = strong_product(h, kk, k=3)
    assert g.n == h.n * kk.n
    assert g.m == h.m * kk.n + kk.m * h.n + 2 * h.m * kk.m
    dh, dk = h.degrees(), kk.degrees()
    want = (dh[:, None] + dk[None, :] + dh[:, None] * dk[None, :]).ravel()
    assert np.array_equal(g.degrees(), want)


def test_k2_strong_k2():
    g = strong_product(complete_graph(2, colour=2, k=2), complete_graph(2, colour=1, k=2))
    assert g.m == 6
    assert Counter(c for *_, c in g.edges()) == {1: 2, 2: 4}
    assert g.edge_colour(0, 1) == 1 and g.edge_colour(2, 3) == 1
    assert g.edge_colour(0, 3) == 2 and g.edge_colour(1, 2) == 2


def test_strong_product_is_asymmetric():
    h = complete_graph(2, colour=2, k=2)
    kk = complete_graph(3, colour=1, k=2)
    a, b = strong_product(h, kk), strong_product(kk, h)
    assert a.colour_totals().tolist() != b.colour_totals().tolist()


def test_k22_strong_k3():
    # K_{2,2} split into two perfect matchings (colours 1, 2) times a colour-3 triangle
    h = ColouredGraph.from_edges(4, 3, [(0, 2, 1), (1, 3, 1), (0, 3, 2), (1, 2, 2)])
    g = strong_product(h, complete_graph(3, colour=3, k=3))
    assert g.n == 12
    assert np.all(g.colour_degrees() == np.array([3, 3, 2]))


def _random_factor(rng):
    n = rng.randint(1, 6)
    return oracles.random_coloured_graph(n, 3, rng.random(), rng)


@pytest.mark.parametrize("seed", range(25))
def test_additivity(seed):
    rng = random.Random(seed)
    g1, g2 = _random_factor(rng), _random_factor(rng)
    g = cartesian_product([g1, g2], k=3)
    c1, c2, c = (neighbourhood_counts(x, 1)[:, 0, :] for x in (g1, g2, g))
    d1, d2, d = g1.colour_degrees(), g2.colour_degrees(), g.colour_degrees()
    for i in range(g1.n):
        for j in range(g2.n):
            v = i * g2.n + j
            assert np.array_equal(d[v], d1[i] + d2[j])
            assert np.array_equal(c[v], c1[i] + c2[j])


@given(small_graph, small_graph)
def test_cartesian_commutes_up_to_relabelling(a, b):
    ab = cartesian_product([a, b], k=3)
    ba = cartesian_product([b, a], k=3)
    ca, cb = neighbourhood_counts(ab, 1), neighbourhood_counts(ba, 1)
    assert sorted(map(tuple, ca[:, 0, :].tolist())) == sorted(map(tuple, cb[:, 0, :].tolist()))
    assert sorted(map(tuple, ab.colour_degrees().tolist())) == sorted(map(tuple, ba.colour_degrees().tolist()))


def test_assemble_k4_k55():
    g = ccp_flip_assemble([complete_graph(4), complete_bipartite(5, 5)])
    rep = verify_flip(g)
    assert g.n == 40 and rep.passed and rep.degrees == (3, 5)


def test_assemble_names_failing_pair():
    with pytest.raises(FlipAssemblyError, match=r"pair 1: max e\[u\]=5 .* min e\[v\]=2") as info:
        ccp_flip_assemble([cycle_graph(5), complete_bipartite(5, 5)])
    assert info.value.pair == 1


def test_assemble_rejects_irregular_and_nonincreasing():
    with pytest.raises(FlipAssemblyError, match="not regular"):
        ccp_flip_assemble([path_graph(3), complete_graph(5)])
    with pytest.raises(FlipAssemblyError, match="degree"):
        ccp_flip_assemble([complete_graph(5), complete_graph(4)])


def test_assemble_three_chain():
    # K_5: degree 4, e=10; K_4 x K_3: degree 5, e=9; K_{6,6}: degree 6, e=6
    chain = [complete_graph(5), cartesian_product([complete_graph(4), complete_graph(3)]), complete_bipartite(6, 6)]
    g = ccp_flip_assemble(chain)
    rep = verify_flip(g)
    assert rep.passed and rep.degrees == (4, 5, 6) and rep.uniform_counts() == [(10, 9, 6)]
    with pytest.raises(FlipAssemblyError, match="pair 2"):
        ccp_flip_assemble([complete_graph(5), cartesian_product([complete_graph(4), complete_graph(3)]),
                           cartesian_product([complete_graph(5), complete_graph(3)])])


@st.composite
def assemble_families(draw):
    # factors K_{a+1} x K_{a'+1} and K_{n,n}, keeping the e-range condition
    size = draw(st.integers(2, 3))
    out = []
    prev_deg, prev_e = 0, 10**9
    for _ in range(size):
        options = []
        for a in range(1, 7):
            for b in range(0, a + 1):
                deg = a + b
                e = a * (a + 1) // 2 + b * (b + 1) // 2
                if deg > prev_deg and e < prev_e:
                    options.append(("kk", a, b, deg, e))
        for n in range(2, 9):
            if n > prev_deg and n < prev_e:
                options.append(("knn", n, 0, n, n))
        if not options:
            break
        pick = draw(st.sampled_from(options))
        out.append(pick)
        prev_deg, prev_e = pick[3], pick[4]
    return out


@given(assemble_families())
def test_assembled_families_verify(family):
    if len(family) < 2:
        return
    hs = []
    for kind, a, b, _, _ in family:
        if kind == "knn":
            hs.append(complete_bipartite(a, a))
        elif b == 0:
            hs.append(complete_graph(a + 1))
        else:
            hs.append(cartesian_product([complete_graph(a + 1), complete_graph(b + 1)]))
    rep = verify_flip(ccp_flip_assemble(hs))
    assert rep.passed
    assert rep.degrees == tuple(f[3] for f in family)
    assert rep.uniform_counts() == [tuple(f[4] for f in family)]


def test_compose_two_rb35():
    g, _ = construct_rb(3, 5)
    rep = verify_flip(compose_flip(g, g))
    assert rep.n == 1600 and rep.passed and rep.degrees == (6, 10)


def test_compose_rb34_rb35():
    g, _ = construct_rb(3, 4)
    h, _ = construct_rb(3, 5)
    rep = verify_flip(compose_flip(g, h))
    assert rep.passed and rep.degrees == (6, 9)


def test_compose_rejects_non_flip():
    g, _ = construct_rb(3, 5)
    bad = cartesian_product([complete_graph(4, colour=2, k=2), complete_graph(2, colour=1, k=2)], k=2)
    with pytest.raises(FlipAssemblyError) as info:
        compose_flip(g, bad)
    assert info.value.report is not None and not info.value.report.passed


def test_single_vertex_factor_is_identity():
    g, _ = construct_rb(3, 5)
    assert cartesian_product([g, empty_graph(1, k=2)], k=2) == g
