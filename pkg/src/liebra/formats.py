"""Text and JSON serializations of colored graphs.

Text form, one edge per line or several compact tokens per line::

    # a comment
    r 1 2        unoriented red edge {x1, x2}
    b 3>1        oriented blue edge x3 -> x1
    r1-2 b3-1    compact tokens, as printed by ``format_edges``

JSON form: ``{"n": 3, "edges": [{"u": 1, "v": 2, "c": "r"}]}``, with
``"src"``/``"dst"`` keys instead of ``"u"``/``"v"`` for oriented graphs.
"""

from __future__ import annotations

import json
import re

from .combinatorics import Color, ColoredGraph, OrientedGraph
from .errors import DomainError

_LINE = re.compile(r"^(r|b|red|blue)\s*x?(\d+)\s*(-|>|\s)\s*x?(\d+)$", re.IGNORECASE)
_TOKEN = re.compile(r"^(r|b)x?(\d+)(-|>)x?(\d+)$", re.IGNORECASE)
_N_LINE = re.compile(r"^n\s*=?\s*(\d+)$", re.IGNORECASE)


def _build(n: int | None, edges: list, oriented: bool):
    top = max([max(u, v) for u, v, _ in edges], default=0)
    if n is None:
        n = top
    if n < 1:
        raise DomainError("graph has no vertices; give n")
    if top > n:
        raise DomainError(f"edge uses x{top} outside x1..x{n}")
    cls = OrientedGraph if oriented else ColoredGraph
    return cls.make(range(1, n + 1), edges)


def parse_graph_text(text: str, n: int | None = None, oriented: bool | None = None):
    """Parse the text form; orientation is inferred from ``>`` unless forced."""
    edges, seps = [], set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _N_LINE.match(line)
        if m:
            n = n or int(m.group(1))
            continue
        m = _LINE.match(line)
        found = [m] if m else [_TOKEN.match(tok) for tok in line.split()]
        if not all(found):
            raise DomainError(f"cannot read edge on line {lineno}: {raw.strip()!r}")
        for mm in found:
            color, u, sep, v = mm.groups()
            edges.append((int(u), int(v), Color.parse(color)))
            seps.add(">" if sep == ">" else "-")
    if len(seps) > 1:
        raise DomainError("mixed oriented and unoriented edges")
    is_oriented = (seps == {">"}) if oriented is None else oriented
    return _build(n, edges, is_oriented)


def parse_graph_json(obj, oriented: bool | None = None):
    if isinstance(obj, str):
        obj = json.loads(obj)
    raw = obj.get("edges", [])
    has_src = any("src" in e for e in raw)
    is_oriented = has_src if oriented is None else oriented
    edges = []
    for e in raw:
        u = e.get("src", e.get("u"))
        v = e.get("dst", e.get("v"))
        if u is None or v is None or "c" not in e:
            raise DomainError(f"malformed edge {e!r}")
        edges.append((int(str(u).lstrip("x")), int(str(v).lstrip("x")), Color.parse(e["c"])))
    return _build(obj.get("n"), edges, is_oriented)


def parse_graph(text: str, n: int | None = None, oriented: bool | None = None):
    """Either form; JSON is recognized by a leading brace."""
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid JSON: {exc}") from None
        if n is not None:
            obj.setdefault("n", n)
        return parse_graph_json(obj, oriented)
    return parse_graph_text(text, n, oriented)


def graph_to_json(g) -> dict:
    if isinstance(g, OrientedGraph):
        edges = [{"src": s, "dst": d, "c": c.char} for s, d, c in g.edges]
    else:
        edges = [{"u": u, "v": v, "c": c.char} for u, v, c in g.edges]
    return {"n": g.n, "edges": edges}


def graph_to_text(g) -> str:
    sep = ">" if isinstance(g, OrientedGraph) else " "
    lines = [f"n {g.n}"]
    lines += [f"{c.char} {u}{sep}{v}" for u, v, c in g.edges]
    return "\n".join(lines) + "\n"
