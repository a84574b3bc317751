"""Edge-list, JSON and DOT serialisation of coloured graphs.

Edge-list format (UTF-8, LF)::

    n k
    u v c        # one line per edge, u < v, 0-based vertices, 1-based colours

JSON mirrors it: ``{"n": .., "k": .., "edges": [[u, v, c], ...]}``.  The
format is chosen from the file suffix (``.json`` or anything else).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .graph import ColouredGraph

DOT_COLOURS = {1: "blue", 2: "red", 3: "green"}
DOT_PALETTE = ["orange", "purple", "brown", "cyan", "magenta", "olive", "gray", "pink"]


class GraphFormatError(ValueError):
    pass


def dot_colour(c: int) -> str:
    if c in DOT_COLOURS:
        return DOT_COLOURS[c]
    return DOT_PALETTE[(c - 4) % len(DOT_PALETTE)]


def parse_edge_list(text: str) -> ColouredGraph:
    lines = text.split("\n")
    header = None
    seen: set[tuple[int, int]] = set()
    us, vs, cs = [], [], []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise GraphFormatError(f"malformed header at line {lineno}: expected 'n k'")
            try:
                n, k = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphFormatError(f"malformed header at line {lineno}: non-integer field") from None
            if n < 0 or k < 1:
                raise GraphFormatError(f"malformed header at line {lineno}: need n >= 0 and k >= 1")
            header = (n, k)
            continue
        if len(parts) != 3:
            raise GraphFormatError(f"malformed edge at line {lineno}: expected 'u v c'")
        try:
            u, v, c = (int(x) for x in parts)
        except ValueError:
            raise GraphFormatError(f"malformed edge at line {lineno}: non-integer field") from None
        _check_edge(header, u, v, c, seen, lineno)
        us.append(u)
        vs.append(v)
        cs.append(c)
    if header is None:
        raise GraphFormatError("malformed header at line 1: file is empty")
    return ColouredGraph(header[0], header[1], us, vs, cs)


def _check_edge(header, u, v, c, seen, lineno):
    n, k = header
    if not (0 <= u < n and 0 <= v < n):
        raise GraphFormatError(f"vertex out of range at line {lineno}")
    if u == v:
        raise GraphFormatError(f"self-loop at line {lineno}")
    if not 1 <= c <= k:
        raise GraphFormatError(f"colour out of range at line {lineno}")
    key = (min(u, v), max(u, v))
    if key in seen:
        raise GraphFormatError(f"duplicate edge at line {lineno}")
    seen.add(key)


def graph_to_dict(g: ColouredGraph) -> dict:
    u, v, c = g.edge_arrays
    return {"n": g.n, "k": g.k, "edges": np.stack([u, v, c], axis=1).tolist()}


def graph_from_dict(data: dict) -> ColouredGraph:
    try:
        n, k, edges = int(data["n"]), int(data["k"]), data["edges"]
    except (KeyError, TypeError, ValueError):
        raise GraphFormatError("malformed header: JSON graph needs integer 'n', 'k' and an 'edges' list") from None
    if n < 0 or k < 1:
        raise GraphFormatError("malformed header: need n >= 0 and k >= 1")
    seen: set[tuple[int, int]] = set()
    for i, e in enumerate(edges):
        if not (isinstance(e, list) and len(e) == 3 and all(isinstance(x, int) for x in e)):
            raise GraphFormatError(f"malformed edge at index {i}")
        _check_edge((n, k), *e, seen, f"index {i}")
    arr = np.array(edges, dtype=np.int64).reshape(-1, 3)
    return ColouredGraph(n, k, arr[:, 0], arr[:, 1], arr[:, 2])


def load_graph(path) -> ColouredGraph:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"malformed JSON at line {exc.lineno}") from None
        return graph_from_dict(data)
    return parse_edge_list(text)


def save_graph(g: ColouredGraph, path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        with path.open("w", encoding="utf-8", newline="\n") as fh:
            json.dump(graph_to_dict(g), fh, separators=(",", ":"))
            fh.write("\n")
        return
    u, v, c = g.edge_arrays
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"{g.n} {g.k}\n")
        # stream in blocks; the Cayley s=4 instance has ~1.6e7 edges
        block = 1 << 18
        for start in range(0, g.m, block):
            rows = np.stack([u[start:start + block], v[start:start + block], c[start:start + block]], axis=1)
            fh.write("\n".join(f"{a} {b} {col}" for a, b, col in rows.tolist()))
            fh.write("\n")


def export_dot(g: ColouredGraph, path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("graph G {\n")
        for x in range(g.n):
            fh.write(f"  {x};\n")
        for a, b, c in g.edges():
            fh.write(f'  {a} -- {b} [color="{dot_colour(c)}"];\n')
        fh.write("}\n")
