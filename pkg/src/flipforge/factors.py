"""Regular factorisations of K_m and K_{n,n}, and the partition oracle for
(r, c)-constant graphs.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb, isqrt

from .graph import ColouredGraph


@dataclass(frozen=True)
class FactorDecomposition:
    """Edge-disjoint regular factors of a base graph.

    ``base`` is ``("K", m)`` for K_m on ``0..m-1`` or ``("Knn", n)`` for K_{n,n}
    with sides ``0..n-1`` and ``n..2n-1``.
    """

    base: tuple[str, int]
    factors: tuple[tuple[tuple[int, int], ...], ...]
    degrees: tuple[int, ...]

    @property
    def order(self) -> int:
        kind, size = self.base
        return size if kind == "K" else 2 * size

    def edges(self) -> list[tuple[int, int]]:
        return [e for f in self.factors for e in f]

    def to_graph(self, colours) -> ColouredGraph:
        """Colour factor ``i`` with ``colours[i]``; uncovered base edges are absent."""
        triples = [(a, b, col) for f, col in zip(self.factors, colours) for a, b in f]
        return ColouredGraph.from_edges(self.order, max(colours, default=1), triples)

    def to_json(self) -> dict:
        return {
            "base": list(self.base),
            "degrees": list(self.degrees),
            "factors": [[list(e) for e in f] for f in self.factors],
        }


def one_factorization(m: int) -> FactorDecomposition:
    """Round-robin 1-factorisation of K_m (m even).

    Vertex ``m-1`` stays fixed; in round ``i`` it meets ``i`` and the other
    vertices pair up as ``(i+j, i-j) mod (m-1)``.
    """
    if m < 2 or m % 2:
        raise ValueError(f"one_factorization needs an even m >= 2, got {m}")
    q = m - 1
    rounds = []
    for i in range(q):
        pairs = [tuple(sorted((i, q)))]
        for j in range(1, m // 2):
            a, b = (i + j) % q, (i - j) % q
            pairs.append((min(a, b), max(a, b)))
        rounds.append(tuple(sorted(pairs)))
    return FactorDecomposition(("K", m), tuple(rounds), (1,) * q)


def bipartite_shift(n: int, i: int) -> tuple[tuple[int, int], ...]:
    """Perfect matching {(u_j, w_{(j+i) mod n})} of K_{n,n}."""
    return tuple((j, n + (j + i) % n) for j in range(n))


def bipartite_d_factor(n: int, d: int, offset: int = 0) -> FactorDecomposition:
    """``d`` disjoint cyclic-shift matchings of K_{n,n}, shifts ``offset..offset+d-1``."""
    if not 0 <= d <= n:
        raise ValueError(f"bipartite_d_factor needs 0 <= d <= n, got n={n}, d={d}")
    if offset < 0 or offset + d > n:
        raise ValueError(f"shift range {offset}..{offset + d - 1} exceeds 0..{n - 1}")
    shifts = tuple(bipartite_shift(n, i) for i in range(offset, offset + d))
    return FactorDecomposition(("Knn", n), shifts, (1,) * d)


# -- (r, c)-constant partitions ---------------------------------------------


@dataclass(frozen=True)
class ConstantPartition:
    parts: tuple[int, ...]
    r: int = field(init=False)
    c: int = field(init=False)

    def __post_init__(self):
        if not self.parts or min(self.parts) < 1:
            raise ValueError("parts must be positive")
        if list(self.parts) != sorted(self.parts, reverse=True):
            raise ValueError("parts must be non-increasing")
        object.__setattr__(self, "r", sum(self.parts))
        object.__setattr__(self, "c", sum(comb(a, 2) for a in self.parts))

    @property
    def product_order(self) -> int:
        out = 1
        for a in self.parts:
            out *= a + 1
        return out


_REACH = [1]  # bit c of _REACH[s] set iff some partition of s has sum C(a,2) == c


def _reachable(s: int) -> int:
    while len(_REACH) <= s:
        t = len(_REACH)
        mask = 0
        for a in range(1, t + 1):
            mask |= _REACH[t - a] << comb(a, 2)
        _REACH.append(mask)
    return _REACH[s]


def achievable_c(r: int) -> list[int]:
    mask = _reachable(r)
    return [c for c in range(comb(r, 2) + 1) if mask >> c & 1]


def constant_partition(r: int, c: int) -> ConstantPartition | None:
    """Partition of ``r`` with sum of C(a_j, 2) equal to ``c``, or ``None``.

    Among all solutions the lexicographically largest non-increasing one is
    returned: taking the largest feasible part first is enough, because any
    larger part in the remainder could have been taken first.
    """
    if r < 1 or c < 0 or c > comb(r, 2):
        return None
    if not _reachable(r) >> c & 1:
        return None
    parts = []
    s = r
    while s:
        for a in range(s, 0, -1):
            rest = c - comb(a, 2)
            if rest >= 0 and _reachable(s - a) >> rest & 1:
                parts.append(a)
                s -= a
                c = rest
                break
    return ConstantPartition(tuple(parts))


class SpecStatus(enum.Enum):
    GUARANTEED_IN = "guaranteed-in"
    GUARANTEED_OUT = "guaranteed-out"
    UNKNOWN = "unknown"


def below_existence_bound(r: int, c: int) -> bool:
    """Exact test of ``c <= r**2/2 - 5*r**1.5``."""
    lhs = r * r - 2 * c  # need lhs >= 10 r sqrt(r)
    return lhs >= 0 and lhs * lhs >= 100 * r ** 3


def spec_guaranteed(r: int, c: int) -> SpecStatus:
    if not 0 <= c <= comb(r, 2):
        raise ValueError(f"c must lie in 0..C(r,2), got r={r}, c={c}")
    if below_existence_bound(r, c):
        return SpecStatus.GUARANTEED_IN
    k = comb(r, 2) - c
    if k >= 1 and r >= 3 * k:
        return SpecStatus.GUARANTEED_OUT
    return SpecStatus.UNKNOWN


def floor_half_bound(b: int) -> int:
    """floor(b**2/2 - 5*b**1.5), computed in integers."""
    return (b * b - _ceil_sqrt(100 * b ** 3)) // 2


def floor_quarter_bound(b: int) -> int:
    """floor((b**2 - 10*b**1.5) / 4), computed in integers."""
    return (b * b - _ceil_sqrt(100 * b ** 3)) // 4


def _ceil_sqrt(x: int) -> int:
    s = isqrt(x)
    return s if s * s == x else s + 1
