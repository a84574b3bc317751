"""Immutable edge-coloured simple graphs and neighbourhood queries.

Vertices are the integers ``0..n-1`` and colours are ``1..k``.  Edges are kept
as three parallel integer arrays ``(u, v, colour)`` with ``u < v``, sorted
lexicographically; that canonical form is what equality, hashing and the file
formats use.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np
import scipy.sparse as sp


class GraphError(ValueError):
    """Invalid graph data or an out-of-range query."""


class ColouredGraph:
    __slots__ = ("n", "k", "_u", "_v", "_c", "_csr", "_sets", "_cdeg")

    def __init__(self, n: int, k: int, u, v, colour, *, _trusted: bool = False):
        n = int(n)
        k = int(k)
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        if k < 1:
            raise GraphError(f"colour count must be at least 1, got {k}")
        u = np.asarray(u, dtype=np.int64).ravel()
        v = np.asarray(v, dtype=np.int64).ravel()
        c = np.asarray(colour, dtype=np.int64).ravel()
        if not (len(u) == len(v) == len(c)):
            raise GraphError("edge arrays differ in length")
        if not _trusted:
            u, v, c = _canonical(n, k, u, v, c)
        for arr in (u, v, c):
            arr.setflags(write=False)
        self.n = n
        self.k = k
        self._u, self._v, self._c = u, v, c
        self._csr = {}
        self._sets = None
        self._cdeg = None

    @classmethod
    def from_edges(cls, n: int, k: int, edges: Iterable[Sequence[int]]) -> "ColouredGraph":
        """Build from ``(u, v, colour)`` triples in any order."""
        arr = np.array(list(edges), dtype=np.int64).reshape(-1, 3)
        return cls(n, k, arr[:, 0], arr[:, 1], arr[:, 2])

    @classmethod
    def monochrome(cls, n: int, pairs: Iterable[Sequence[int]], colour: int = 1, k: int | None = None):
        arr = np.array(list(pairs), dtype=np.int64).reshape(-1, 2)
        c = np.full(len(arr), colour, dtype=np.int64)
        return cls(n, colour if k is None else k, arr[:, 0], arr[:, 1], c)

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._u)

    @property
    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return self._u, self._v, self._c

    def edges(self) -> Iterator[tuple[int, int, int]]:
        for a, b, c in zip(self._u.tolist(), self._v.tolist(), self._c.tolist()):
            yield a, b, c

    def _check_vertex(self, v) -> int:
        v = int(v)
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range 0..{self.n - 1}")
        return v

    def csr(self, colour: int | None = None) -> sp.csr_array:
        """Symmetric 0/1 adjacency matrix, optionally for one colour only."""
        key = 0 if colour is None else int(colour)
        if key not in self._csr:
            if colour is None:
                u, v = self._u, self._v
            else:
                mask = self._c == colour
                u, v = self._u[mask], self._v[mask]
            rows = np.concatenate([u, v])
            cols = np.concatenate([v, u])
            data = np.ones(len(rows), dtype=np.int64)
            mat = sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))
            mat.sort_indices()
            self._csr[key] = mat
        return self._csr[key]

    def colour_csr(self) -> sp.csr_array:
        """Adjacency matrix whose entries are edge colours."""
        if -1 not in self._csr:
            rows = np.concatenate([self._u, self._v])
            cols = np.concatenate([self._v, self._u])
            data = np.concatenate([self._c, self._c])
            mat = sp.csr_array((data, (rows, cols)), shape=(self.n, self.n))
            mat.sort_indices()
            self._csr[-1] = mat
        return self._csr[-1]

    def neighbours(self, v: int) -> np.ndarray:
        v = self._check_vertex(v)
        a = self.csr()
        return a.indices[a.indptr[v]:a.indptr[v + 1]]

    def adjacency_sets(self) -> list[frozenset]:
        """Per-vertex neighbour sets (built once, O(1) membership)."""
        if self._sets is None:
            a = self.csr()
            ind, ptr = a.indices.tolist(), a.indptr.tolist()
            self._sets = [frozenset(ind[ptr[i]:ptr[i + 1]]) for i in range(self.n)]
        return self._sets

    def has_edge(self, u: int, v: int) -> bool:
        u, v = self._check_vertex(u), self._check_vertex(v)
        return v in self.adjacency_sets()[u]

    def edge_colour(self, u: int, v: int) -> int | None:
        u, v = self._check_vertex(u), self._check_vertex(v)
        a = self.colour_csr()
        row = a.indices[a.indptr[u]:a.indptr[u + 1]]
        i = np.searchsorted(row, v)
        if i < len(row) and row[i] == v:
            return int(a.data[a.indptr[u] + i])
        return None

    def degrees(self) -> np.ndarray:
        return np.bincount(np.concatenate([self._u, self._v]), minlength=self.n)

    def colour_degrees(self) -> np.ndarray:
        """``(n, k)`` array; column ``j-1`` holds deg_j."""
        if self._cdeg is None:
            out = np.zeros((self.n, self.k), dtype=np.int64)
            np.add.at(out, (self._u, self._c - 1), 1)
            np.add.at(out, (self._v, self._c - 1), 1)
            out.setflags(write=False)
            self._cdeg = out
        return self._cdeg

    def colour_totals(self) -> np.ndarray:
        """e_j(G) for j = 1..k."""
        return np.bincount(self._c - 1, minlength=self.k)[: self.k]

    # -- derived graphs --------------------------------------------------

    def recoloured(self, colour_map: dict[int, int], k: int | None = None) -> "ColouredGraph":
        lut = np.arange(self.k + 1)
        for old, new in colour_map.items():
            lut[old] = new
        new_k = int(lut[1:].max()) if k is None else k
        return ColouredGraph(self.n, new_k, self._u, self._v, lut[self._c])

    def monochromatic(self, colour: int, k: int | None = None) -> "ColouredGraph":
        c = np.full(self.m, colour, dtype=np.int64)
        return ColouredGraph(self.n, colour if k is None else k, self._u, self._v, c, _trusted=True)

    def restrict_colours(self, colours: Sequence[int]) -> "ColouredGraph":
        """Keep only edges with the given colours, renumbered 1..len(colours) in order."""
        colours = list(colours)
        lut = np.zeros(self.k + 1, dtype=np.int64)
        for i, col in enumerate(colours, start=1):
            if not 1 <= col <= self.k:
                raise GraphError(f"colour {col} out of range 1..{self.k}")
            lut[col] = i
        new_c = lut[self._c]
        keep = new_c > 0
        return ColouredGraph(self.n, len(colours), self._u[keep], self._v[keep], new_c[keep])

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ColouredGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and np.array_equal(self._u, other._u)
            and np.array_equal(self._v, other._v)
            and np.array_equal(self._c, other._c)
        )

    def __hash__(self):
        return hash((self.n, self.k, self._u.tobytes(), self._v.tobytes(), self._c.tobytes()))

    def __repr__(self):
        return f"ColouredGraph(n={self.n}, k={self.k}, m={self.m})"


def _canonical(n, k, u, v, c):
    if len(u) == 0:
        z = np.zeros(0, dtype=np.int64)
        return z, z.copy(), z.copy()
    if u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n:
        raise GraphError(f"edge endpoint out of range 0..{n - 1}")
    if np.any(u == v):
        i = int(np.flatnonzero(u == v)[0])
        raise GraphError(f"self-loop at vertex {int(u[i])}")
    if c.min() < 1 or c.max() > k:
        raise GraphError(f"colour out of range 1..{k}")
    lo = np.minimum(u, v)
    hi = np.maximum(u, v)
    order = np.lexsort((hi, lo))
    lo, hi, c = lo[order], hi[order], c[order]
    dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
    if dup.any():
        i = int(np.flatnonzero(dup)[0])
        raise GraphError(f"duplicate edge {{{int(lo[i])}, {int(hi[i])}}}")
    return lo, hi, c


@dataclass(frozen=True)
class VertexStats:
    vertex: int
    deg_by_colour: tuple[int, ...]
    closed_count_by_colour: tuple[int, ...]
    open_count_by_colour: tuple[int, ...]


def closed_neighbourhood(g: ColouredGraph, v: int, t: int = 1) -> frozenset:
    """All vertices within distance ``t`` of ``v`` (``v`` included), by BFS."""
    v = g._check_vertex(v)
    if t < 1:
        raise GraphError(f"radius must be >= 1, got {t}")
    adj = g.adjacency_sets()
    seen = {v}
    frontier = deque([(v, 0)])
    while frontier:
        x, d = frontier.popleft()
        if d == t:
            continue
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                frontier.append((y, d + 1))
    return frozenset(seen)


def colour_counts(g: ColouredGraph, s: Iterable[int]) -> tuple[int, ...]:
    """Per-colour number of edges with both endpoints in ``s``."""
    mask = np.zeros(g.n, dtype=bool)
    idx = np.fromiter((int(x) for x in s), dtype=np.int64)
    if len(idx) and (idx.min() < 0 or idx.max() >= g.n):
        raise GraphError("vertex set contains out-of-range vertices")
    mask[idx] = True
    u, v, c = g.edge_arrays
    inside = mask[u] & mask[v]
    counts = np.bincount(c[inside] - 1, minlength=g.k)
    return tuple(int(x) for x in counts[: g.k])


def vertex_stats(g: ColouredGraph, v: int) -> VertexStats:
    nb = closed_neighbourhood(g, v, 1)
    closed = colour_counts(g, nb)
    open_ = colour_counts(g, nb - {v})
    deg = tuple(int(x) for x in g.colour_degrees()[v])
    return VertexStats(v, deg, closed, open_)


def bfs_distances(g: ColouredGraph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable vertices get -1."""
    source = g._check_vertex(source)
    a = g.csr()
    ind, ptr = a.indices, a.indptr
    dist = np.full(g.n, -1, dtype=np.int64)
    dist[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in ind[ptr[x]:ptr[x + 1]]:
            if dist[y] < 0:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def girth(g: ColouredGraph) -> float:
    """Length of a shortest cycle (``inf`` for forests), by BFS from every vertex."""
    adj = g.adjacency_sets()
    best = float("inf")
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            x = queue.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    queue.append(y)
                elif parent[x] != y:
                    best = min(best, dist[x] + dist[y] + 1)
    return best


# -- small standard graphs, single colour ---------------------------------


def complete_graph(n: int, colour: int = 1, k: int | None = None) -> ColouredGraph:
    iu, iv = np.triu_indices(n, 1)
    return ColouredGraph(n, colour if k is None else k, iu, iv, np.full(len(iu), colour))


def complete_bipartite(p: int, q: int, colour: int = 1, k: int | None = None) -> ColouredGraph:
    """K_{p,q} with sides ``0..p-1`` and ``p..p+q-1``."""
    a, b = np.meshgrid(np.arange(p), np.arange(p, p + q), indexing="ij")
    return ColouredGraph(p + q, colour if k is None else k, a.ravel(), b.ravel(), np.full(p * q, colour))


def cycle_graph(n: int, colour: int = 1, k: int | None = None) -> ColouredGraph:
    u = np.arange(n)
    return ColouredGraph(n, colour if k is None else k, u, (u + 1) % n, np.full(n, colour))


def path_graph(n: int, colour: int = 1, k: int | None = None) -> ColouredGraph:
    u = np.arange(n - 1)
    return ColouredGraph(n, colour if k is None else k, u, u + 1, np.full(n - 1, colour))


def empty_graph(n: int, k: int = 1) -> ColouredGraph:
    z = np.zeros(0, dtype=np.int64)
    return ColouredGraph(n, k, z, z, z)
