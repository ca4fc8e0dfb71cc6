"""Command-line interface: ``liebra <command> ...``.

Exit codes: 0 success, 1 domain error or failed check, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .combinatorics import (
    count_by_increasing_edges,
    enumerate_colored_trees,
    format_edges,
    increasing_edge_polynomial,
    oriented_copy,
)
from .eil import eil_basis, eil_normalize
from .errors import LiebraError
from .formats import graph_to_json, parse_graph
from .monomials import basis_monomial, parse_monomial, print_monomial, to_json
from .orders import index_vector, linear_extension, to_dot
from .pairing import pair, pairing_matrix
from .poisson import com_matrix, enumerate_forests, parse_poisson, poisson_normalize
from .rewrite import lc_normalize
from .verify import SUITES, run_suites

SCHEMA = 1


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2, default=str))
    else:
        print(text)


def _read_graph(args, oriented: bool | None):
    if args.edges is not None:
        text = args.edges
    elif args.graph == "-":
        text = sys.stdin.read()
    elif args.graph:
        with open(args.graph) as fh:
            text = fh.read()
    else:
        raise LiebraError("give --graph FILE or --edges TEXT")
    return parse_graph(text, args.n, oriented)


def _combo_lines(combo, fmt) -> list[str]:
    return [f"{c:+d} * {s}" for s, c, _ in combo.sorted_terms(fmt)]


def cmd_enumerate(args) -> int:
    if args.what == "trees":
        trees = enumerate_colored_trees(args.n)
        lines = [f"{format_edges(g)}\troot x{oriented_root(g)}" for g in trees]
        _emit(args, {"n": args.n, "count": len(trees), "trees": [graph_to_json(g) for g in trees]},
              "\n".join(lines + [f"# {len(trees)} trees"]))
    else:
        forests = enumerate_forests(args.n)
        _emit(args, {"n": args.n, "count": len(forests), "forests": [str(f) for f in forests]},
              "\n".join([str(f) for f in forests] + [f"# {len(forests)} forests"]))
    return 0


def oriented_root(g) -> int:
    heads = {d for _, d, _ in oriented_copy(g).edges}
    return next(v for v in g.vertices if v not in heads)


def cmd_basis(args) -> int:
    if args.kind == "lie":
        items = [print_monomial(basis_monomial(g)) for g in linear_extension(args.n)]
    elif args.kind == "eil":
        items = [format_edges(o) for o in eil_basis(args.n)]
    else:
        items = [str(f.basis_element()) for f in enumerate_forests(args.n)]
    _emit(args, {"kind": args.kind, "n": args.n, "count": len(items), "basis": items},
          "\n".join(items + [f"# {len(items)} elements"]))
    return 0


def cmd_normalize(args) -> int:
    if args.kind == "lie":
        if args.expr is None:
            raise LiebraError("normalize lie needs --expr")
        m = parse_monomial(args.expr, args.n)
        out = lc_normalize(m)
        payload = {"input": print_monomial(m), "terms": [{"coeff": c, "monomial": s, "tree": to_json(k)} for s, c, k in out.sorted_terms()]}
        lines = _combo_lines(out, print_monomial)
    elif args.kind == "poisson":
        if args.expr is None:
            raise LiebraError("normalize poisson needs --expr")
        p = parse_poisson(args.expr, args.n)
        out = poisson_normalize(p)
        payload = {"input": str(p), "terms": [{"coeff": c, "monomial": s} for s, c, _ in out.sorted_terms(str)]}
        lines = _combo_lines(out, str)
    else:
        g = _read_graph(args, oriented=True)
        out = eil_normalize(g)
        payload = {"input": format_edges(g), "terms": [{"coeff": c, "graph": graph_to_json(k)} for _, c, k in out.sorted_terms(format_edges)]}
        lines = _combo_lines(out, format_edges)
    _emit(args, payload, "\n".join(lines) if lines else "0")
    return 0


def cmd_pair(args) -> int:
    g = _read_graph(args, oriented=True)
    m = parse_monomial(args.expr, g.n)
    value = pair(g, m)
    _emit(args, {"graph": format_edges(g), "monomial": print_monomial(m), "value": value}, str(value))
    return 0


def cmd_matrix(args) -> int:
    if args.kind == "com":
        rep = com_matrix(args.n)
        payload = {
            "kind": "com", "n": args.n, "size": len(rep.rows),
            "block_sizes": {str(k): v for k, v in rep.block_sizes().items()},
            "cross_violations": rep.cross_violations, "kron_failures": [str(p) for p in rep.kron_failures],
            "singular_blocks": [str(p) for p in rep.singular_blocks],
        }
        text = [f"{len(rep.rows)}x{len(rep.cols)} product pairing matrix"]
        for part, size in rep.block_sizes().items():
            text.append(f"  block {part}: {size}")
        text.append("blocks: " + ("cross-partition zero, Kronecker diagonal blocks" if rep.ok else "FAILED"))
        _emit(args, payload, "\n".join(text))
        return 0 if rep.ok else 1
    order = linear_extension(args.n) if args.order == "ind" else sorted(enumerate_colored_trees(args.n), key=format_edges)
    mat = pairing_matrix(args.n, order)
    checks = args.check or ["triangular"]
    size = len(order)
    violations = mat.triangular_violations()
    results = {}
    lines = []
    if "triangular" in checks:
        ok = not violations and mat.diagonal_ok()
        results["triangular"] = ok
        if ok:
            lines.append(f"{size}×{size} upper triangular, diagonal ±1")
        else:
            lines.append(f"{size}×{size} NOT upper triangular with unit diagonal; {len(violations)} entries below the diagonal")
            lines += [f"  ({i},{j}): {format_edges(order[i])} vs {print_monomial(basis_monomial(order[j]))}" for i, j in violations[:20]]
    if "unimodular" in checks:
        det = mat.determinant()
        results["unimodular"] = abs(det) == 1
        lines.append(f"determinant {det}")
    if "blocks" in checks:
        lines.append("blocks: only meaningful for `matrix com`")
    payload = {
        "kind": "lie", "n": args.n, "order": [format_edges(g) for g in order],
        "checks": results, "violations": violations,
        "entries": mat.entries.tolist() if args.full else None,
    }
    if args.full and not args.json:
        lines += [" ".join(f"{v:+d}" if v else " 0" for v in row) for row in mat.entries.tolist()]
    _emit(args, payload, "\n".join(lines))
    return 0 if all(results.values()) else 1


def cmd_order(args) -> int:
    if args.what == "opdag":
        print(to_dot(args.n))
        return 0
    order = linear_extension(args.n)
    rows = [(format_edges(g), index_vector(g)) for g in order]
    _emit(args, {"n": args.n, "order": [{"tree": s, "index": list(v)} for s, v in rows]},
          "\n".join(f"{i:4d}  {s:<30} {tuple(v)}" for i, (s, v) in enumerate(rows)))
    return 0


def cmd_count(args) -> int:
    table = count_by_increasing_edges(args.n)
    poly = increasing_edge_polynomial(args.n)
    match = list(table.a) == poly
    text = f"{' '.join(map(str, table.a))} | poly: {' '.join(map(str, poly))} | {'MATCH' if match else 'MISMATCH'}"
    _emit(args, {"n": args.n, "counts": list(table.a), "polynomial": poly, "match": match}, text)
    return 0 if match else 1


def cmd_verify(args) -> int:
    names = list(SUITES) if "all" in args.suites else args.suites
    results = run_suites(names, max_n=args.max_n, seed=args.seed, samples=args.samples)
    ok = all(r.ok for r in results)
    lines = []
    for r in results:
        lines.append(r.summary())
        lines += [f"  reproducer: {f}" for f in r.failures]
        lines += [f"  note: {note}" for note in r.notes]
    _emit(args, {"max_n": args.max_n, "seed": args.seed, "ok": ok, "suites": [r.to_json() for r in results]},
          "\n".join(lines))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    parser = argparse.ArgumentParser(prog="liebra", description="Bases and pairings for two compatible brackets.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="list pattern-avoiding trees or forests")
    p.add_argument("what", choices=["trees", "forests"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("basis", parents=[common], help="print a basis")
    p.add_argument("kind", choices=["lie", "eil", "poisson"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("normalize", parents=[common], help="rewrite in a basis")
    p.add_argument("kind", choices=["lie", "eil", "poisson"])
    p.add_argument("--n", type=int)
    p.add_argument("--expr")
    p.add_argument("--graph", help="edge-list or JSON file, - for stdin")
    p.add_argument("--edges", help="inline edge list such as 'r1>2 b3>1'")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("pair", parents=[common], help="pair an oriented graph with a monomial")
    p.add_argument("--n", type=int)
    p.add_argument("--graph")
    p.add_argument("--edges")
    p.add_argument("--expr", required=True)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("matrix", parents=[common], help="pairing matrix certificates")
    p.add_argument("kind", nargs="?", choices=["lie", "com"], default="lie")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--order", choices=["ind", "lex"], default="ind")
    p.add_argument("--check", action="append", choices=["triangular", "unimodular", "blocks"])
    p.add_argument("--full", action="store_true", help="print every entry")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("order", parents=[common], help="linear extension or the move diagram")
    p.add_argument("what", choices=["ind", "opdag"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--list", action="store_true", help="list the order (default)")
    p.add_argument("--dot", action="store_true", help="Graphviz output (opdag)")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("count", parents=[common], help="rooted trees by increasing edges")
    p.add_argument("what", choices=["inc-edges"])
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("suites", nargs="+", choices=["all"] + list(SUITES))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and args.n < 1:
        parser.error("--n must be at least 1")
    try:
        return args.func(args)
    except (LiebraError, OSError) as exc:
        print(f"liebra: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
