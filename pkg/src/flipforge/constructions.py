"""Explicit flip-graph constructions.

Every function returns ``(graph, certificate)``.  The certificate carries the
colour degrees and neighbourhood counts predicted by the construction's
arithmetic, so tests can hold them against an independent recount.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import classifier
from .factors import bipartite_d_factor, constant_partition, one_factorization
from .graph import ColouredGraph, complete_bipartite, complete_graph
from .products import cartesian_product, ccp_flip_assemble, strong_product

INTERVAL_MAX_B = 5
CAYLEY_S_RANGE = (2, 4)
DEFAULT_MAX_ORDER = 2_000_000


class ConstructionError(ValueError):
    pass


@dataclass
class ConstructionCertificate:
    recipe: str
    params: dict
    degrees: tuple[int, ...]
    counts: list[tuple[int, ...]]  # counts[s-1][j-1] = predicted e_{j,s}[v]
    vertices: int
    edges: int | None = None
    notes: dict = field(default_factory=dict)

    @property
    def t(self) -> int:
        return len(self.counts)

    def mismatches(self, report) -> list[str]:
        """Differences against a :class:`~flipforge.verification.FlipReport`."""
        out = []
        if report.n != self.vertices:
            out.append(f"vertices: predicted {self.vertices}, measured {report.n}")
        if report.degrees != self.degrees:
            out.append(f"degrees: predicted {self.degrees}, measured {report.degrees}")
        measured = report.uniform_counts()
        want = self.counts[: report.t]
        if measured is None:
            out.append("counts differ between vertices")
        elif measured[: len(want)] != want:
            out.append(f"counts: predicted {want}, measured {measured}")
        return out

    def to_json(self) -> dict:
        return {
            "recipe": self.recipe,
            "params": self.params,
            "degrees": list(self.degrees),
            "counts": [list(c) for c in self.counts],
            "vertices": self.vertices,
            "edges": self.edges,
            "notes": self.notes,
        }


def _bipartite_coloured(n: int, blocks: list[tuple[int, int]], k: int) -> ColouredGraph:
    """K_{n,n} restricted to consecutive shift blocks ``(count, colour)``."""
    triples = []
    offset = 0
    for count, colour in blocks:
        for a, b in bipartite_d_factor(n, count, offset).edges():
            triples.append((a, b, colour))
        offset += count
    return ColouredGraph.from_edges(2 * n, k, triples)


def _rejection(seq) -> str:
    verdict = classifier.classify(seq)
    rule = verdict.rules[0] if verdict.rules else None
    why = f"{rule.id}: {rule.detail}" if rule else "no rule applies"
    return f"classifier verdict for {list(seq)} is {verdict.status} ({why})"


# -- two colours --------------------------------------------------------------------


def construct_rb(b: int, r: int):
    """K_{r,r} (colour 2) times K_{b+1} (colour 1)."""
    if not classifier.two_colour_feasible(b, r):
        raise ConstructionError(f"(b,r)=({b},{r}) outside 3 <= b < r <= C(b+1,2)-1; " + _rejection((b, r)))
    g = cartesian_product([complete_bipartite(r, r, colour=2, k=2), complete_graph(b + 1, colour=1, k=2)], k=2)
    cert = ConstructionCertificate("rb", {"b": b, "r": r}, (b, r), [(comb(b + 1, 2), r)],
                                   2 * r * (b + 1), g.m)
    return g, cert


def construct_rb_optimized(b: int, r: int, x: int | None = None):
    """K_{r+x,r+x} carrying an x-factor (colour 1) and an r-factor (colour 2), times K_{b+1-x}."""
    if not classifier.two_colour_feasible(b, r):
        raise ConstructionError(f"(b,r)=({b},{r}) outside 3 <= b < r <= C(b+1,2)-1; " + _rejection((b, r)))
    if x is None:
        x = classifier.optimal_x(b, r)
    if not 0 <= x <= b or not x + comb(b + 1 - x, 2) > r:
        raise ConstructionError(f"x={x} invalid: need 0 <= x <= b and x + C(b+1-x,2) > r={r}")
    h = _bipartite_coloured(r + x, [(x, 1), (r, 2)], k=2)
    g = cartesian_product([h, complete_graph(b + 1 - x, colour=1, k=2)], k=2)
    cert = ConstructionCertificate("rb-opt", {"b": b, "r": r, "x": x}, (b, r),
                                   [(x + comb(b + 1 - x, 2), r)], classifier.rb_optimized_order(b, r, x), g.m)
    return g, cert


def construct_weak(b: int, r: int):
    """K_{r,r} (colour 2) times K_{b+1} (colour 1), read as a weak-flip witness."""
    if not (2 <= b < r <= comb(b + 1, 2)):
        raise ConstructionError(f"weak witness needs 2 <= b < r <= C(b+1,2), got b={b}, r={r}")
    g = cartesian_product([complete_bipartite(r, r, colour=2, k=2), complete_graph(b + 1, colour=1, k=2)], k=2)
    cert = ConstructionCertificate("weak", {"b": b, "r": r}, (b, r), [(comb(b + 1, 2), r)], 2 * r * (b + 1), g.m)
    return g, cert


def construct_weak_23():
    g, cert = construct_weak(2, 3)
    cert.recipe = "weak23"
    cert.params = {}
    return g, cert


# -- three or more colours ---------------------------------------------------------------


def construct_3flip(a1: int, a2: int, a3: int, x: int | None = None):
    """H times K_{a1+1}, with H the optimised (a2, a3) graph recoloured to 2, 3."""
    if not 1 <= a1 < a2 < a3:
        raise ConstructionError(f"need 1 <= a1 < a2 < a3, got {(a1, a2, a3)}")
    if x is None:
        x = classifier._three_flip_x(a1, a2, a3)
        if x is None:
            hint = ""
            if a1 >= 3 and a3 <= 2 * a1 - 2:
                hint = "; the sequence lies in the [a1, 2a1-2] interval, use the interval recipe"
            raise ConstructionError(
                f"no x in 0..{a2} with {a3} < x + C({a2}+1-x,2) < C({a1}+1,2)={comb(a1 + 1, 2)}{hint}")
    e2 = x + comb(a2 + 1 - x, 2)
    if not a3 < e2 < comb(a1 + 1, 2):
        raise ConstructionError(f"x={x} gives e_2={e2}, not strictly between {a3} and {comb(a1 + 1, 2)}")
    h, _ = construct_rb_optimized(a2, a3, x)
    h = h.recoloured({1: 2, 2: 3}, k=3)
    g = cartesian_product([h, complete_graph(a1 + 1, colour=1, k=3)], k=3)
    cert = ConstructionCertificate("three", {"a1": a1, "a2": a2, "a3": a3, "x": x}, (a1, a2, a3),
                                   [(comb(a1 + 1, 2), e2, a3)], classifier.three_flip_order(a1, a2, a3, x), g.m)
    return g, cert


def construct_gap(k: int, t: int | None = None):
    """Strong product H ⊠ K_{2n} with a bipartite H carrying growing colour classes."""
    try:
        n, t, rho = classifier.gap_parameters(k, t)
    except classifier.SequenceError as exc:
        raise ConstructionError(str(exc)) from None
    # K_{2n}: colour i (1 < i < k) gets k-i one-factors, colour 1 the rest
    rounds = one_factorization(2 * n).factors
    k_triples = []
    pos = 0
    for i in range(2, k):
        for f in rounds[pos:pos + k - i]:
            k_triples.extend((a, b, i) for a, b in f)
        pos += k - i
    for f in rounds[pos:]:
        k_triples.extend((a, b, 1) for a, b in f)
    kk = ColouredGraph.from_edges(2 * n, k, k_triples)
    # H = K_{rho,rho}: colour 2+i gets t+i matchings
    h = _bipartite_coloured(rho, [(t + i, 2 + i) for i in range(k - 1)], k=k)
    g = strong_product(h, kk, k=k)

    deg_k = [2 * n - 1 - comb(k - 1, 2)] + [k - i for i in range(2, k)] + [0]
    e_k = [n * d for d in deg_k]
    counts = [(rho + 1) * e_k[0]] + [(rho + 1) * e_k[i - 1] + 4 * n * n * (t + i - 2) for i in range(2, k + 1)]
    cert = ConstructionCertificate("gap", {"k": k, "t": t}, classifier.gap_degrees(k, n, t), [tuple(counts)],
                                   4 * n * rho, g.m, notes={"n": n, "rho": rho})
    return g, cert


# -- constant graphs and intervals ---------------------------------------------------------


def _constant_graph(parts, colour: int = 1, k: int = 1) -> ColouredGraph:
    return cartesian_product([complete_graph(a + 1, colour=colour, k=k) for a in parts], k=k)


def construct_rc_constant(r: int, c: int):
    """Cartesian product of K_{a_j+1} over a partition of r with sum C(a_j,2) == c."""
    part = constant_partition(r, c)
    if part is None:
        raise ConstructionError(f"no partition of r={r} has sum of C(a_j,2) equal to c={c}")
    g = _constant_graph(part.parts)
    cert = ConstructionCertificate("rc-constant", {"r": r, "c": c}, (r,), [(r + c,)], part.product_order, g.m,
                                   notes={"parts": list(part.parts), "open_count": c})
    return g, cert


def construct_interval(b: int, force: bool = False):
    """(b, b+1, ..., 2b-2)-flip graph.

    H = K_{n,n}, n = (b-1)(b-2), carries a 2j-factor in colour j+1 for
    1 <= j <= b-2; it is multiplied with K_{b+1-j} in colour j+1 for
    0 <= j <= b-2.  Colour j+1 then has degree b+j and e[v] = C(b+1-j,2) + 2j.
    """
    if b < 3:
        raise ConstructionError(f"interval construction needs b >= 3, got {b}")
    if b > INTERVAL_MAX_B and not force:
        raise ConstructionError(
            f"b={b} exceeds the executable bound {INTERVAL_MAX_B} (order {classifier.interval_order(b)}); pass force")
    k = b - 1
    n = (b - 1) * (b - 2)
    h = _bipartite_coloured(n, [(2 * j, j + 1) for j in range(1, b - 1)], k=k)
    factors = [h] + [complete_graph(b + 1 - j, colour=j + 1, k=k) for j in range(b - 1)]
    g = cartesian_product(factors, k=k)
    degrees = tuple(b + j for j in range(b - 1))
    counts = tuple(comb(b + 1 - j, 2) + 2 * j for j in range(b - 1))
    cert = ConstructionCertificate("interval", {"b": b}, degrees, [counts], classifier.interval_order(b), g.m)
    return g, cert


def construct_interval_large(b: int, length: int | None = None, m: int | None = None,
                             max_order: int = DEFAULT_MAX_ORDER):
    """CCP of (b+j-1, m-2(j-1))-constant graphs, j = 1..length."""
    d_len, d_m = classifier.interval_large_defaults(b)
    length = d_len if length is None else length
    m = d_m if m is None else m
    if length < 2:
        raise ConstructionError(f"need at least two colours, got length={length}")
    plan = classifier.interval_large_plan(b, length, m)
    missing = [j for j, p in enumerate(plan, start=1) if p is None]
    if missing:
        j = missing[0]
        raise ConstructionError(f"no ({b + j - 1},{m - 2 * (j - 1)})-constant partition for colour {j}")
    order = classifier.interval_large_order(b, length, m)
    if order > max_order:
        raise ConstructionError(f"estimated order {order} exceeds the cap {max_order}")
    g = ccp_flip_assemble([_constant_graph(p.parts) for p in plan])
    degrees = tuple(b + j - 1 for j in range(1, length + 1))
    counts = tuple(b + j - 1 + m - 2 * (j - 1) for j in range(1, length + 1))
    cert = ConstructionCertificate("interval-large", {"b": b, "length": length, "m": m}, degrees, [counts], order,
                                   g.m, notes={"parts": [list(p.parts) for p in plan]})
    return g, cert


# -- Cayley graphs over Z_2^n -------------------------------------------------------------


def cayley_counts(s: int, t: int) -> list[tuple[int, int]]:
    """Predicted (e_{1,j}[0], e_{2,j}[0]) for j = 1..t from the distance recurrences."""
    q = 2 ** s
    e1, e2 = comb(q, 2), q
    out = [(e1, e2)]
    for j in range(1, t):
        e2 = e2 + (q - 1) * (q - j + 1) * comb(q, j - 1) + (q - j) * comb(q, j)
        e1 = e1 + comb(q, 2) * comb(q, j)
        out.append((e1, e2))
    return out


def construct_cayley_tflip(s: int, t: int | None = None):
    """Cayley graph on Z_2^n, n = 2^s + s.

    Bits ``0..s-1`` span the colour-1 connecting set (all non-zero
    combinations); each of the remaining ``2^s`` unit vectors is a colour-2
    generator.
    """
    lo, hi = CAYLEY_S_RANGE
    if not lo <= s <= hi:
        raise ConstructionError(f"s={s} outside the executable range {lo}..{hi}")
    if t is None:
        t = s - 1
    if not 1 <= t < s:
        raise ConstructionError(f"need 1 <= t < s, got s={s}, t={t}")
    n_bits = 2 ** s + s
    size = 1 << n_bits
    blue = np.arange(1, 2 ** s, dtype=np.int64)
    red = np.array([1 << i for i in range(s, n_bits)], dtype=np.int64)
    g_all = np.arange(size, dtype=np.int64)
    us, vs, cs = [], [], []
    for gens, colour in ((blue, 1), (red, 2)):
        for a in gens:
            other = g_all ^ a
            keep = g_all < other
            us.append(g_all[keep])
            vs.append(other[keep])
            cs.append(np.full(int(keep.sum()), colour, dtype=np.int64))
    g = ColouredGraph(size, 2, np.concatenate(us), np.concatenate(vs), np.concatenate(cs))
    cert = ConstructionCertificate("cayley", {"s": s, "t": t}, (2 ** s - 1, 2 ** s), cayley_counts(s, t), size, g.m)
    return g, cert


# -- registry used by the CLI ----------------------------------------------------------------

RECIPES = {
    "rb": (construct_rb, ["b", "r"]),
    "rb-opt": (construct_rb_optimized, ["b", "r", "x?"]),
    "weak": (construct_weak, ["b", "r"]),
    "weak23": (construct_weak_23, []),
    "three": (construct_3flip, ["a1", "a2", "a3", "x?"]),
    "gap": (construct_gap, ["k", "t?"]),
    "rc-constant": (construct_rc_constant, ["r", "c"]),
    "interval": (construct_interval, ["b"]),
    "interval-large": (construct_interval_large, ["b", "length?", "m?"]),
    "cayley": (construct_cayley_tflip, ["s", "t?"]),
}


def run_recipe(name: str, args: list[int], **kwargs):
    if name not in RECIPES:
        raise ConstructionError(f"unknown recipe {name!r}; choose from {', '.join(RECIPES)}")
    fn, names = RECIPES[name]
    required = [p for p in names if not p.endswith("?")]
    if not len(required) <= len(args) <= len(names):
        raise ConstructionError(f"recipe {name} takes parameters {' '.join(names)}, got {len(args)} values")
    return fn(*args, **kwargs)


def build_from_recipe(recipe: dict):
    """Execute a classifier recipe dict and restrict to the requested colours."""
    params = dict(recipe["params"])
    colours = params.pop("colours", None)
    name = recipe["recipe"]
    if name == "interval":
        g, cert = construct_interval(params["b"], force=True)
    elif name == "interval-large":
        g, cert = construct_interval_large(params["b"], params["length"], params["m"])
    else:
        fn, _ = RECIPES[name]
        g, cert = fn(**params)
    if colours is not None:
        g = g.restrict_colours(colours)
        idx = [c - 1 for c in colours]
        cert = ConstructionCertificate(
            cert.recipe + "-subsequence", {**cert.params, "colours": colours},
            tuple(cert.degrees[i] for i in idx), [tuple(row[i] for i in idx) for row in cert.counts],
            cert.vertices, g.m)
    return g, cert
