"""Construction-independent checks of flip, weak-flip and [t]-flip colourings.

Everything here measures the graph it is given; nothing reads certificates.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb

import numpy as np
import scipy.sparse as sp

from .graph import ColouredGraph, GraphError

DENSE_MAX_N = 2500
SPARSE_CHUNK_WORK = 20_000_000


class VerificationError(ValueError):
    pass


def worker_count() -> int:
    env = os.environ.get("FLIPFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise VerificationError(f"FLIPFORGE_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _blas_limit():
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:  # pragma: no cover
        import contextlib

        return contextlib.nullcontext()
    return threadpool_limits(limits=worker_count())


# -- counting kernels ---------------------------------------------------------


def neighbourhood_counts(g: ColouredGraph, t: int = 1, method: str = "auto") -> np.ndarray:
    """``out[v, s-1, j-1] = e_{j,s}[v]``: colour-j edges inside N_s[v], for s = 1..t."""
    if t < 1:
        raise VerificationError(f"radius must be >= 1, got {t}")
    if method == "auto":
        method = "dense" if g.n <= DENSE_MAX_N else "sparse"
    if method == "dense":
        with _blas_limit():
            return _counts_dense(g, t)
    if method == "sparse":
        return _counts_sparse(g, t)
    raise VerificationError(f"unknown counting method {method!r}")


def _counts_dense(g: ColouredGraph, t: int) -> np.ndarray:
    n, k = g.n, g.k
    out = np.zeros((n, t, k), dtype=np.int64)
    u, v, c = g.edge_arrays
    step = np.eye(n, dtype=np.float32)
    step[u, v] = 1
    step[v, u] = 1
    colour_mats = []
    for j in range(1, k + 1):
        a = np.zeros((n, n), dtype=np.float32)
        sel = c == j
        a[u[sel], v[sel]] = 1
        a[v[sel], u[sel]] = 1
        colour_mats.append(a)
    reach = step.copy()
    for s in range(t):
        if s:
            reach = (reach @ step > 0).astype(np.float32)
        for j, a in enumerate(colour_mats):
            # entries of reach @ a are at most n, exact in float32 for n < 2**24
            inner = ((reach @ a) * reach).sum(axis=1, dtype=np.float64)
            out[:, s, j] = np.rint(inner).astype(np.int64) // 2
    return out


def _counts_sparse(g: ColouredGraph, t: int) -> np.ndarray:
    n, k = g.n, g.k
    out = np.zeros((n, t, k), dtype=np.int64)
    adj = g.csr()
    step = (adj + sp.identity(n, dtype=np.int64, format="csr")).tocsr()
    colour_mats = [g.csr(j) for j in range(1, k + 1)]
    avg_deg = max(1.0, 2 * g.m / max(n, 1))
    ball = min(float(n), (avg_deg + 1) ** t)
    chunk = int(max(1, min(n, SPARSE_CHUNK_WORK // max(1.0, ball * avg_deg))))

    def run(start: int):
        stop = min(n, start + chunk)
        rows = sp.csr_array(
            (np.ones(stop - start, dtype=np.int64), (np.arange(stop - start), np.arange(start, stop))),
            shape=(stop - start, n),
        )
        reach = rows
        block = np.zeros((stop - start, t, k), dtype=np.int64)
        for s in range(t):
            reach = (reach @ step).tocsr()
            reach.data[:] = 1
            for j, a in enumerate(colour_mats):
                inner = (reach @ a).multiply(reach).sum(axis=1)
                block[:, s, j] = np.asarray(inner).ravel() // 2
        return start, block

    starts = range(0, n, chunk)
    workers = min(worker_count(), len(starts)) or 1
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(s) for s in starts]
    for start, block in results:
        out[start:start + len(block)] = block
    return out


# -- reports --------------------------------------------------------------------


@dataclass
class FlipReport:
    mode: str
    t: int
    k: int
    n: int
    deg_table: np.ndarray = field(repr=False)
    counts: np.ndarray = field(repr=False)
    verdict: str
    counterexample: dict | None
    global_totals: tuple[int, ...]
    colour_regular: bool
    regularity_required: bool

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @property
    def degrees(self) -> tuple[int, ...] | None:
        """Per-colour degrees when every colour class is regular."""
        if not self.colour_regular:
            return None
        return tuple(int(x) for x in self.deg_table[0])

    @property
    def global_majority(self) -> bool:
        return all(a < b for a, b in zip(self.global_totals, self.global_totals[1:]))

    def closed_counts(self, v: int, s: int = 1) -> tuple[int, ...]:
        return tuple(int(x) for x in self.counts[v, s - 1])

    def open_counts(self, v: int) -> tuple[int, ...]:
        return tuple(int(a - b) for a, b in zip(self.counts[v, 0], self.deg_table[v]))

    def uniform_counts(self) -> list[tuple[int, ...]] | None:
        """Per-distance counts if every vertex has the same ones, else ``None``."""
        first = self.counts[0]
        if not np.all(self.counts == first[None, :, :]):
            return None
        return [tuple(int(x) for x in row) for row in first]

    def summary(self) -> str:
        return f"{self.verdict.upper()} mode={self.mode} t={self.t} colours={self.k} vertices={self.n}"

    def to_json(self, per_vertex: bool = True) -> dict:
        out = {
            "mode": self.mode,
            "t": self.t,
            "colours": self.k,
            "vertices": self.n,
            "verdict": self.verdict,
            "counterexample": self.counterexample,
            "global_totals": list(self.global_totals),
            "global_majority": self.global_majority,
            "colour_regular": self.colour_regular,
            "regularity_required": self.regularity_required,
            "degrees": list(self.degrees) if self.colour_regular else None,
            "uniform_counts": [list(x) for x in u] if (u := self.uniform_counts()) is not None else None,
        }
        if per_vertex:
            out["per_vertex_counts"] = self.counts.tolist()
            if not self.colour_regular:
                out["per_vertex_degrees"] = self.deg_table.tolist()
        return out


def _check_inputs(g: ColouredGraph):
    if g.k < 2:
        raise VerificationError(f"flip verification needs at least 2 colours, got {g.k}")
    if g.n == 0:
        raise VerificationError("graph has no vertices")


def _evaluate(g, counts, mode, t, weak, require_regular) -> FlipReport:
    deg = np.asarray(g.colour_degrees())
    colour_regular = bool(np.all(deg == deg[0][None, :]))
    deg_bad = deg[:, 1:] <= deg[:, :-1]  # (n, k-1)
    gaps = counts[:, :, :-1] - counts[:, :, 1:]  # e_i - e_{i+1}, (n, t, k-1)
    cnt_bad = gaps < 0 if weak else gaps <= 0
    per_vertex_bad = deg_bad.any(axis=1) | cnt_bad.any(axis=(1, 2))
    counterexample = None
    verdict = "pass"
    if require_regular and not colour_regular:
        verdict = "fail"
        col = int(np.flatnonzero(np.any(deg != deg[0][None, :], axis=0))[0])
        v = int(np.flatnonzero(deg[:, col] != deg[0, col])[0])
        counterexample = {"kind": "not-colour-regular", "vertex": v, "colour": col + 1,
                          "values": [int(deg[0, col]), int(deg[v, col])]}
    if per_vertex_bad.any():
        verdict = "fail"
        if counterexample is None:
            v = int(np.flatnonzero(per_vertex_bad)[0])
            if deg_bad[v].any():
                i = int(np.flatnonzero(deg_bad[v])[0])
                counterexample = {"kind": "degree", "vertex": v, "distance": 0, "colours": [i + 1, i + 2],
                                  "values": [int(deg[v, i]), int(deg[v, i + 1])]}
            else:
                s, i = (int(x) for x in np.argwhere(cnt_bad[v])[0])
                counterexample = {"kind": "count", "vertex": v, "distance": s + 1, "colours": [i + 1, i + 2],
                                  "values": [int(counts[v, s, i]), int(counts[v, s, i + 1])]}
    return FlipReport(
        mode=mode, t=t, k=g.k, n=g.n, deg_table=deg, counts=counts, verdict=verdict,
        counterexample=counterexample, global_totals=tuple(int(x) for x in g.colour_totals()),
        colour_regular=colour_regular, regularity_required=require_regular,
    )


def verify_flip(g: ColouredGraph, mode: str = "strict", require_colour_regular: bool = False,
                method: str = "auto") -> FlipReport:
    """Flip (``strict``) or weak-flip (``weak``) check over closed neighbourhoods."""
    if mode not in ("strict", "weak"):
        raise VerificationError(f"mode must be 'strict' or 'weak', got {mode!r}")
    _check_inputs(g)
    counts = neighbourhood_counts(g, 1, method)
    return _evaluate(g, counts, mode, 1, mode == "weak", require_colour_regular)


def verify_t_flip(g: ColouredGraph, t: int, require_colour_regular: bool = False,
                  method: str = "auto") -> FlipReport:
    """Strict flip condition in every closed s-neighbourhood, 1 <= s <= t."""
    if t < 1:
        raise VerificationError(f"radius must be >= 1, got {t}")
    _check_inputs(g)
    counts = neighbourhood_counts(g, t, method)
    return _evaluate(g, counts, "t-flip", t, False, require_colour_regular)


# -- triangle census --------------------------------------------------------------

TRIANGLE_TYPES = ("BBB", "BBR", "BRB", "BRR", "RRB", "RRR")
_BLUE, _RED = 1, 2


def _triangle_type(at_v: tuple[int, int], opposite: int) -> str:
    a, b = sorted(at_v)
    name = {(1, 1): "BB", (1, 2): "BR", (2, 2): "RR"}[(a, b)]
    return name + ("B" if opposite == _BLUE else "R")


@dataclass
class TriangleCensus:
    """Rooted triangle counts per vertex; ``counts[name][v]``."""

    n: int
    counts: dict[str, np.ndarray]

    def at(self, v: int) -> dict[str, int]:
        return {name: int(self.counts[name][v]) for name in TRIANGLE_TYPES}

    def totals(self) -> dict[str, int]:
        return {name: int(self.counts[name].sum()) for name in TRIANGLE_TYPES}

    def balance_identities(self) -> tuple[bool, bool]:
        tot = self.totals()
        return 2 * tot["RRB"] == tot["BRR"], 2 * tot["BBR"] == tot["BRB"]

    def open_blue(self) -> np.ndarray:
        return self.counts["BBB"] + self.counts["BRB"] + self.counts["RRB"]

    def open_red(self) -> np.ndarray:
        return self.counts["RRR"] + self.counts["BBR"] + self.counts["BRR"]

    def to_json(self) -> dict:
        return {"vertices": self.n, "totals": self.totals(),
                "per_vertex": {name: self.counts[name].tolist() for name in TRIANGLE_TYPES}}


def triangle_census(g: ColouredGraph) -> TriangleCensus:
    """Classify every triangle at each of its three corners (colour 1 = B, 2 = R)."""
    if g.k != 2:
        raise VerificationError(f"triangle census needs exactly 2 colours, got {g.k}")
    counts = {name: np.zeros(g.n, dtype=np.int64) for name in TRIANGLE_TYPES}
    adj = g.adjacency_sets()
    colour = {}
    for a, b, c in g.edges():
        colour[a, b] = c
        colour[b, a] = c
    for a, b, _ in g.edges():
        for w in adj[a] & adj[b]:
            if w <= b:
                continue
            cab, caw, cbw = colour[a, b], colour[a, w], colour[b, w]
            counts[_triangle_type((cab, caw), cbw)][a] += 1
            counts[_triangle_type((cab, cbw), caw)][b] += 1
            counts[_triangle_type((caw, cbw), cab)][w] += 1
    return TriangleCensus(g.n, counts)


@dataclass(frozen=True)
class NecessityWitness:
    vertex: int
    open_blue: int
    open_red: int
    bound: int

    @property
    def difference(self) -> int:
        return self.open_blue - self.open_red


def classify_necessity_witness(g: ColouredGraph) -> NecessityWitness:
    """A vertex with e_B(v) - e_R(v) <= C(b, 2) in a verified (b, r)-flip graph."""
    if g.k != 2:
        raise VerificationError("necessity witness needs a two-colour graph")
    rep = verify_flip(g, "strict", require_colour_regular=True)
    if not rep.passed:
        raise VerificationError(f"input is not a verified (b,r)-flip graph: {rep.summary()}")
    b = rep.degrees[0]
    open_counts = rep.counts[:, 0, :] - rep.deg_table
    diff = open_counts[:, 0] - open_counts[:, 1]
    v = int(np.argmin(diff))
    bound = comb(b, 2)
    if diff[v] > bound:  # would contradict the averaging argument
        raise GraphError(f"no vertex meets e_B(v)-e_R(v) <= {bound}; minimum is {int(diff[v])}")
    return NecessityWitness(v, int(open_counts[v, 0]), int(open_counts[v, 1]), bound)
