"""Colour-inheriting Cartesian and strong products.

Product vertices are flattened row-major: the tuple ``(u_1, ..., u_q)`` over
factors of orders ``n_1..n_q`` becomes ``sum(u_i * prod(n_j for j > i))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

import numpy as np

from .graph import ColouredGraph
from .verification import neighbourhood_counts, verify_flip


class ProductError(ValueError):
    pass


class FlipAssemblyError(ValueError):
    """A factor family violates the hypotheses of the CCP flip assembly."""

    def __init__(self, message: str, pair: int | None = None, report=None):
        super().__init__(message)
        self.pair = pair
        self.report = report


@dataclass(frozen=True)
class ProductLabelling:
    orders: tuple[int, ...]

    @property
    def size(self) -> int:
        return prod(self.orders)

    def strides(self) -> tuple[int, ...]:
        out = []
        s = 1
        for n in reversed(self.orders):
            out.append(s)
            s *= n
        return tuple(reversed(out))

    def flatten(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.orders):
            raise ProductError("coordinate tuple has the wrong length")
        idx = 0
        for c, n in zip(coords, self.orders):
            if not 0 <= c < n:
                raise ProductError(f"coordinate {c} out of range 0..{n - 1}")
            idx = idx * n + c
        return idx

    def unflatten(self, index: int) -> tuple[int, ...]:
        out = []
        for n in reversed(self.orders):
            index, r = divmod(index, n)
            out.append(r)
        return tuple(reversed(out))


def _palette(gs: Sequence[ColouredGraph], k: int | None) -> int:
    if k is None:
        return max(g.k for g in gs)
    if any(g.k > k for g in gs):
        raise ProductError(f"factor palette exceeds the shared palette 1..{k}")
    return k


def cartesian_product(gs: Sequence[ColouredGraph], k: int | None = None) -> ColouredGraph:
    """Cartesian product; each edge takes the colour of its differing factor edge."""
    gs = list(gs)
    if not gs:
        raise ProductError("cartesian_product needs at least one factor")
    k = _palette(gs, k)
    lab = ProductLabelling(tuple(g.n for g in gs))
    total = lab.size
    strides = lab.strides()
    us, vs, cs = [], [], []
    all_idx = np.arange(total, dtype=np.int64)
    for g, n, stride in zip(gs, lab.orders, strides):
        if g.m == 0:
            continue
        base = all_idx[(all_idx // stride) % n == 0]
        a, b, c = g.edge_arrays
        us.append((base[:, None] + a[None, :] * stride).ravel())
        vs.append((base[:, None] + b[None, :] * stride).ravel())
        cs.append(np.broadcast_to(c, (len(base), len(c))).ravel())
    if not us:
        z = np.zeros(0, dtype=np.int64)
        return ColouredGraph(total, k, z, z, z)
    return ColouredGraph(total, k, np.concatenate(us), np.concatenate(vs), np.concatenate(cs))


def strong_product(h: ColouredGraph, kk: ColouredGraph, k: int | None = None) -> ColouredGraph:
    """H ⊠ K with vertex ``(u, v)`` at ``u * |K| + v``.

    Edges inside a copy of K (``u == u'``) keep their K colour; every other
    edge ``(u, v)(u', v')`` takes the colour of ``uu'`` in H.
    """
    k = _palette([h, kk], k)
    nk = kk.n
    hu, hv, hc = h.edge_arrays
    ku, kv, kc = kk.edge_arrays
    us, vs, cs = [], [], []
    # copies of K
    base = np.arange(h.n, dtype=np.int64) * nk
    us.append((base[:, None] + ku[None, :]).ravel())
    vs.append((base[:, None] + kv[None, :]).ravel())
    cs.append(np.broadcast_to(kc, (h.n, len(kc))).ravel())
    # H edges with v == v'
    w = np.arange(nk, dtype=np.int64)
    us.append((hu[:, None] * nk + w[None, :]).ravel())
    vs.append((hv[:, None] * nk + w[None, :]).ravel())
    cs.append(np.repeat(hc, nk))
    # diagonals: uu' in H and vv' in K, both orientations of vv'
    for ka, kb in ((ku, kv), (kv, ku)):
        us.append((hu[:, None] * nk + ka[None, :]).ravel())
        vs.append((hv[:, None] * nk + kb[None, :]).ravel())
        cs.append(np.repeat(hc, len(ka)))
    return ColouredGraph(h.n * nk, k, np.concatenate(us), np.concatenate(vs), np.concatenate(cs))


def _regular_degree(g: ColouredGraph) -> int | None:
    deg = g.degrees()
    if g.n == 0:
        return None
    return int(deg[0]) if np.all(deg == deg[0]) else None


def _closed_edge_counts(g: ColouredGraph) -> np.ndarray:
    """e[v] for every vertex, ignoring colours."""
    return neighbourhood_counts(g.monochromatic(1), 1)[:, 0, 0]


def ccp_flip_assemble(hs: Sequence[ColouredGraph]) -> ColouredGraph:
    """Colour ``hs[j]`` with ``j+1`` and return their Cartesian product.

    Each factor must be regular, degrees strictly increasing, and
    ``max e[u]`` over factor ``i+1`` strictly below ``min e[v]`` over factor ``i``.
    """
    hs = list(hs)
    if len(hs) < 2:
        raise FlipAssemblyError("at least two factors are required")
    degs = []
    ranges = []
    for i, h in enumerate(hs, start=1):
        d = _regular_degree(h)
        if d is None:
            raise FlipAssemblyError(f"factor {i} is not regular", pair=i)
        degs.append(d)
        e = _closed_edge_counts(h)
        ranges.append((int(e.min()), int(e.max())))
    for i in range(1, len(hs)):
        if not degs[i - 1] < degs[i]:
            raise FlipAssemblyError(
                f"pair {i}: degree {degs[i]} of factor {i + 1} is not above degree {degs[i - 1]} of factor {i}",
                pair=i,
            )
        hi_next, lo_here = ranges[i][1], ranges[i - 1][0]
        if not hi_next < lo_here:
            raise FlipAssemblyError(
                f"pair {i}: max e[u]={hi_next} over factor {i + 1} is not below min e[v]={lo_here} over factor {i}",
                pair=i,
            )
    k = len(hs)
    return cartesian_product([h.monochromatic(j, k=k) for j, h in enumerate(hs, start=1)], k=k)


def compose_flip(g: ColouredGraph, h: ColouredGraph) -> ColouredGraph:
    """Cartesian product of two verified k-flip graphs on the same palette."""
    if g.k != h.k:
        raise FlipAssemblyError(f"palettes differ: {g.k} vs {h.k} colours")
    for name, x in (("first", g), ("second", h)):
        rep = verify_flip(x, require_colour_regular=True)
        if not rep.passed:
            raise FlipAssemblyError(f"{name} graph is not a flip graph: {rep.summary()}", report=rep)
    return cartesian_product([g, h], k=g.k)
