"""Desk-scale ingredients of the packing route to [t]-flip graphs.

* regular graphs of prescribed girth, sampled from the pairing model;
* edge-disjoint packings of two n-vertex graphs by label switching;
* the edge count of a closed neighbourhood in the line graph of two joined
  perfect trees.

The end-to-end [t]-flip witness needs girths far beyond desk scale, so
:func:`pipeline_demo` only wires the pieces together and reports which of the
required inequalities hold; it claims nothing about the flip property.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb, gcd

import numpy as np

from .graph import ColouredGraph, closed_neighbourhood, colour_counts, girth
from .verification import verify_t_flip


class PackingError(ValueError):
    pass


class PackingPreconditionError(PackingError):
    pass


# -- girth-constrained regular graphs -------------------------------------------------


def _ball(adj, src: int, radius: int) -> set:
    seen = {src}
    frontier = [src]
    for _ in range(radius):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def random_regular_with_girth(n: int, r: int, g: int, seed: int, max_attempts: int = 2000) -> ColouredGraph | None:
    """An r-regular graph on n vertices with girth >= g, or ``None``.

    Each attempt shuffles the n*r pairing points and matches them one at a
    time, only to partners at distance > g-2 (so no loop, multi-edge or cycle
    shorter than g appears); an attempt that gets stuck is discarded.
    """
    if (n * r) % 2:
        raise PackingError(f"n*r must be even, got n={n}, r={r}")
    if g < 3:
        raise PackingError(f"girth bound must be >= 3, got {g}")
    if r >= n:
        return None
    rng = random.Random(seed)
    for _ in range(max_attempts):
        adj = [set() for _ in range(n)]
        stubs = [v for v in range(n) for _ in range(r)]
        rng.shuffle(stubs)
        while stubs:
            u = stubs.pop()
            blocked = _ball(adj, u, g - 2)
            options = [i for i, w in enumerate(stubs) if w not in blocked]
            if not options:
                break
            i = rng.choice(options)
            w = stubs[i]
            stubs[i] = stubs[-1]
            stubs.pop()
            adj[u].add(w)
            adj[w].add(u)
        else:
            pairs = [(a, b) for a in range(n) for b in adj[a] if a < b]
            return ColouredGraph.monochrome(n, pairs)
    return None


# -- packing --------------------------------------------------------------------------


@dataclass
class PackingResult:
    sigma: list[int]  # H vertex -> position in V(G)
    combined: ColouredGraph  # G in colour 2, sigma(H) in colour 1
    switches: int
    restarts: int
    seed: int
    guaranteed: bool

    def to_json(self) -> dict:
        return {"sigma": self.sigma, "switches": self.switches, "restarts": self.restarts,
                "seed": self.seed, "guaranteed": self.guaranteed,
                "vertices": self.combined.n, "edges": self.combined.m}


def max_degree(g: ColouredGraph) -> int:
    return int(g.degrees().max()) if g.n else 0


def _local_conflicts(a, hn_a, b, hn_b, gadj):
    # conflicts on edges incident to a or b, the edge ab counted once
    total = len(hn_a & gadj[a]) + len(hn_b & gadj[b])
    if b in hn_a and b in gadj[a]:
        total -= 1
    return total


def _try_pack(gadj, hadj, n, rng, max_switches):
    sigma = list(range(n))
    rng.shuffle(sigma)
    inv = [0] * n
    for x, pos in enumerate(sigma):
        inv[pos] = x

    def hn(a):
        return {sigma[y] for y in hadj[inv[a]]}

    def conflicts():
        return sorted((a, b) for a in range(n) for b in hn(a) if a < b and b in gadj[a])

    switches = 0
    while True:
        bad = conflicts()
        if not bad:
            return sigma, switches
        if switches >= max_switches:
            return None, switches
        a, b = bad[0]
        chosen = None
        for u in (a, b):
            hn_u = hn(u)
            fallback = None
            for w in range(n):
                if w == u:
                    continue
                hn_w = hn(w)
                before = _local_conflicts(u, hn_u, w, hn_w, gadj)
                swap = {u: w, w: u}
                new_u = {swap.get(z, z) for z in hn_w}
                new_w = {swap.get(z, z) for z in hn_u}
                after = _local_conflicts(u, new_u, w, new_w, gadj)
                if after == 0 and before > 0:
                    chosen = (u, w)
                    break
                if fallback is None and after < before:
                    fallback = (u, w)
            if chosen is None:
                chosen = fallback
            if chosen is not None:
                break
        if chosen is None:
            return None, switches
        u, w = chosen
        xu, xw = inv[u], inv[w]
        sigma[xu], sigma[xw] = w, u
        inv[u], inv[w] = xw, xu
        switches += 1


def sauer_spencer_pack(g: ColouredGraph, h: ColouredGraph, seed: int, strict: bool = True,
                       max_restarts: int = 200) -> PackingResult | None:
    """Place H onto V(G) without shared edges.

    With ``strict`` the maximum-degree condition 2*Δ(G)*Δ(H) < n is required
    and a packing is always found.  Without it the same switching search runs
    as a best effort and ``None`` means no packing was found.
    """
    if g.n != h.n:
        raise PackingError(f"graphs must have the same order, got {g.n} and {h.n}")
    n = g.n
    guaranteed = 2 * max_degree(g) * max_degree(h) < n
    if strict and not guaranteed:
        raise PackingPreconditionError(
            f"2*Δ(G)*Δ(H) = {2 * max_degree(g) * max_degree(h)} is not below n = {n}")
    gadj = g.adjacency_sets()
    hadj = h.adjacency_sets()
    rng = random.Random(seed)
    total_switches = 0
    for restart in range(max_restarts):
        sigma, switches = _try_pack(gadj, hadj, n, rng, max_switches=n * n)
        total_switches += switches
        if sigma is not None:
            combined = _combine(g, h, sigma)
            return PackingResult(sigma, combined, total_switches, restart, seed, guaranteed)
    if strict:
        raise RuntimeError(f"switching search failed after {max_restarts} restarts (seed {seed})")
    return None


def _combine(g: ColouredGraph, h: ColouredGraph, sigma) -> ColouredGraph:
    smap = np.asarray(sigma, dtype=np.int64)
    gu, gv, _ = g.edge_arrays
    hu, hv, _ = h.edge_arrays
    u = np.concatenate([gu, smap[hu]])
    v = np.concatenate([gv, smap[hv]])
    c = np.concatenate([np.full(g.m, 2), np.full(h.m, 1)])
    # the constructor rejects duplicate edges, so a shared edge cannot slip through
    return ColouredGraph(g.n, 2, u, v, c)


def verify_packing(g: ColouredGraph, h: ColouredGraph, result: PackingResult) -> bool:
    """Recount: images disjoint from G, union degrees additive, colours as placed."""
    sigma = result.sigma
    if sorted(sigma) != list(range(g.n)):
        return False
    gset = {(a, b) for a, b, _ in g.edges()}
    placed = {tuple(sorted((sigma[a], sigma[b]))) for a, b, _ in h.edges()}
    if gset & placed:
        return False
    comb_g = result.combined
    deg = comb_g.degrees()
    hdeg = h.degrees()
    want = g.degrees().copy()
    for x in range(h.n):
        want[sigma[x]] += hdeg[x]
    if not np.array_equal(deg, want):
        return False
    blue = {(a, b) for a, b, c in comb_g.edges() if c == 1}
    red = {(a, b) for a, b, c in comb_g.edges() if c == 2}
    return blue == placed and red == gset


# -- perfect trees and line graphs -------------------------------------------------------


def perfect_tree_line_count(b: int, j: int) -> int:
    """Colour-1 edges inside the distance-j ball of the joining edge's line-graph vertex."""
    if b < 2:
        raise PackingError(f"need b >= 2, got {b}")
    if j < 1:
        raise PackingError(f"need j >= 1, got {j}")
    cliques = 2 * (b ** j - 1) // (b - 1)
    return cliques * comb(b + 1, 2)


def joined_perfect_trees(b: int, depth: int) -> ColouredGraph:
    """Two depth-``depth`` trees with b children per internal vertex; roots 0 and 1 joined."""
    pairs = [(0, 1)]
    nxt = 2
    for root in (0, 1):
        level = [root]
        for _ in range(depth):
            new_level = []
            for p in level:
                for _ in range(b):
                    pairs.append((p, nxt))
                    new_level.append(nxt)
                    nxt += 1
            level = new_level
    return ColouredGraph.monochrome(nxt, pairs)


def line_graph(g: ColouredGraph) -> tuple[ColouredGraph, list[tuple[int, int]]]:
    """Line graph (colour 1) and the edge each of its vertices stands for."""
    edges = [(a, b) for a, b, _ in g.edges()]
    incident = [[] for _ in range(g.n)]
    for i, (a, b) in enumerate(edges):
        incident[a].append(i)
        incident[b].append(i)
    pairs = set()
    for inc in incident:
        for x in range(len(inc)):
            for y in range(x + 1, len(inc)):
                pairs.add((inc[x], inc[y]))
    return ColouredGraph.monochrome(len(edges), sorted(pairs)), edges


def measured_tree_line_count(b: int, j: int) -> int:
    tree = joined_perfect_trees(b, j + 1)
    lg, edges = line_graph(tree)
    root = edges.index((0, 1))
    return colour_counts(lg, closed_neighbourhood(lg, root, j))[0]


def disjoint_copies(g: ColouredGraph, copies: int) -> ColouredGraph:
    u, v, c = g.edge_arrays
    off = (np.arange(copies, dtype=np.int64) * g.n)[:, None]
    return ColouredGraph(g.n * copies, g.k, (off + u).ravel(), (off + v).ravel(),
                         np.tile(c, copies), _trusted=True)


def pipeline_demo(b: int, r: int, q: int, t: int, seed: int, girth_g: int = 5, girth_h: int = 5) -> dict:
    """Wire girth sampling, line graph and packing at toy scale and report the inequalities.

    G* is r-regular (colour 2), H* is (b+1)-regular and contributes its line
    graph (colour 1).  Copies are taken so both sides have equal order above
    2*Δ*Δ, then packed and measured.
    """
    report = {"params": {"b": b, "r": r, "q": q, "t": t, "seed": seed}}
    report["inequalities"] = {
        "(q+1)b >= r >= 2b+1": (q + 1) * b >= r >= 2 * b + 1,
        "b >= 2(q+3)^t": b >= 2 * (q + 3) ** t,
    }
    # twice the Moore bound leaves the pairing sampler room at girth 5
    n_g = 2 * (r * r + 1)
    n_h = 2 * ((b + 1) ** 2 + 1)
    gstar = random_regular_with_girth(n_g, r, girth_g, seed)
    hstar = random_regular_with_girth(n_h, b + 1, girth_h, seed + 1)
    if gstar is None or hstar is None:
        report["status"] = "girth-sampling-failed"
        return report
    lh, _ = line_graph(hstar)
    report["girth"] = {"G*": girth(gstar), "H*": girth(hstar)}
    report["inequalities"]["girth(G*) > 2((q+3)b)^t"] = girth(gstar) > 2 * ((q + 3) * b) ** t
    size = gstar.n * lh.n // gcd(gstar.n, lh.n)
    need = 2 * r * 2 * b
    while size <= need:
        size *= 2
    gg = disjoint_copies(gstar, size // gstar.n)
    hh = disjoint_copies(lh, size // lh.n)
    packed = sauer_spencer_pack(gg, hh, seed)
    rep = verify_t_flip(packed.combined, t)
    report["status"] = "packed"
    report["vertices"] = size
    report["packing_verified"] = verify_packing(gg, hh, packed)
    report["measured_verdict"] = rep.verdict
    report["degrees"] = rep.degrees
    return report
