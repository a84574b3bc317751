"""``flipforge`` command line.

Exit codes: 0 success or pass, 1 usage or input error, 2 verification
failure or infeasible, 3 unknown or not found.  JSON goes to stdout, a one
line summary to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classifier, constructions
from .graph import GraphError
from .io import GraphFormatError, export_dot, load_graph, save_graph
from .packing import PackingError, sauer_spencer_pack, verify_packing
from .verification import VerificationError, triangle_census, verify_flip, verify_t_flip

EXIT_OK, EXIT_INPUT, EXIT_FAIL, EXIT_UNKNOWN = 0, 1, 2, 3

INPUT_ERRORS = (GraphFormatError, GraphError, VerificationError, constructions.ConstructionError,
                classifier.SequenceError, PackingError, OSError)


class UsageError(Exception):
    pass


def _emit(payload: dict, summary: str, out=None, err=None) -> None:
    out = out or sys.stdout
    err = err or sys.stderr
    out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    err.write(summary + "\n")


def _write_json(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def cmd_construct(args) -> int:
    g, cert = constructions.run_recipe(args.recipe, args.params, **({"force": True} if args.force else {}))
    if args.out:
        save_graph(g, args.out)
    payload = cert.to_json()
    if args.cert:
        _write_json(args.cert, payload)
    _emit(payload, f"built {args.recipe}: {g.n} vertices, {g.m} edges")
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args.graph)
    if args.t > 1:
        if args.weak:
            raise UsageError("--weak applies to radius 1 only")
        rep = verify_t_flip(g, args.t, require_colour_regular=args.regular)
    else:
        rep = verify_flip(g, "weak" if args.weak else "strict", require_colour_regular=args.regular)
    payload = rep.to_json(per_vertex=args.per_vertex)
    code = EXIT_OK if rep.passed else EXIT_FAIL
    if args.cert:
        data = json.loads(Path(args.cert).read_text(encoding="utf-8"))
        cert = constructions.ConstructionCertificate(
            data["recipe"], data["params"], tuple(data["degrees"]), [tuple(c) for c in data["counts"]],
            data["vertices"], data.get("edges"), data.get("notes", {}))
        mism = cert.mismatches(rep)
        payload["certificate_mismatches"] = mism
        if mism:
            code = EXIT_FAIL
    if args.report:
        _write_json(args.report, rep.to_json(per_vertex=True))
    _emit(payload, rep.summary())
    return code


def cmd_classify(args) -> int:
    if args.weak:
        if len(args.sequence) != 2:
            raise UsageError("--weak takes exactly two values b r")
        verdict = classifier.weak_feasibility(*args.sequence)
    else:
        verdict = classifier.classify(args.sequence)
    _emit(verdict.to_json(), f"{verdict.status}: {' '.join(map(str, args.sequence))}")
    return verdict.exit_code


def cmd_census(args) -> int:
    census = triangle_census(load_graph(args.graph))
    payload = census.to_json()
    ok_red, ok_blue = census.balance_identities()
    _emit(payload, f"census of {census.n} vertices; identities {'hold' if ok_red and ok_blue else 'FAIL'}")
    return EXIT_OK


def cmd_pack(args) -> int:
    g = load_graph(args.g)
    h = load_graph(args.h)
    result = sauer_spencer_pack(g, h, args.seed, strict=args.strict)
    if result is None:
        _emit({"found": False, "seed": args.seed, "guaranteed": False}, "no packing found")
        return EXIT_UNKNOWN
    if not verify_packing(g, h, result):
        raise AssertionError("packing failed its recount")
    if args.out:
        save_graph(result.combined, args.out)
    payload = {"found": True, **result.to_json()}
    _emit(payload, f"packed {g.n} vertices after {result.switches} switches")
    return EXIT_OK


def cmd_export(args) -> int:
    g = load_graph(args.graph)
    fmt = args.format or ("dot" if args.out.endswith(".dot") else "graph")
    if fmt == "dot":
        export_dot(g, args.out)
    else:
        save_graph(g, args.out)
    _emit({"vertices": g.n, "edges": g.m, "colours": g.k, "out": args.out, "format": fmt},
          f"wrote {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flipforge", description="Build and check flip colourings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a graph from a recipe")
    c.add_argument("recipe", help=", ".join(constructions.RECIPES))
    c.add_argument("params", nargs="*", type=int)
    c.add_argument("--out", help="graph file (.json or edge list)")
    c.add_argument("--cert", help="write the certificate JSON here too")
    c.add_argument("--force", action="store_true", help="lift the interval size guard")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check the flip condition by recount")
    v.add_argument("graph")
    v.add_argument("--t", type=int, default=1, help="check every radius up to t")
    v.add_argument("--weak", action="store_true")
    v.add_argument("--regular", action="store_true", help="also require every colour class regular")
    v.add_argument("--report", help="write the full per-vertex report here")
    v.add_argument("--cert", help="compare against a construction certificate")
    v.add_argument("--per-vertex", action="store_true", help="include per-vertex counts on stdout")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", help="decide a flip sequence")
    s.add_argument("sequence", nargs="+", type=int)
    s.add_argument("--weak", action="store_true", help="weak-flip question for (b, r)")
    s.set_defaults(func=cmd_classify)

    t = sub.add_parser("census", help="rooted triangle types of a 2-coloured graph")
    t.add_argument("graph")
    t.set_defaults(func=cmd_census)

    k = sub.add_parser("pack", help="edge-disjoint placement of H onto G")
    k.add_argument("g")
    k.add_argument("h")
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--out")
    k.add_argument("--strict", action="store_true", help="reject inputs with 2*Δ(G)*Δ(H) >= n")
    k.set_defaults(func=cmd_pack)

    e = sub.add_parser("export", help="convert a graph file")
    e.add_argument("graph")
    e.add_argument("--out", required=True)
    e.add_argument("--format", choices=["dot", "graph"])
    e.set_defaults(func=cmd_export)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (UsageError, *INPUT_ERRORS) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
