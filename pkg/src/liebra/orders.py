"""Index vectors, the partial orders on pattern-avoiding trees, and a linear extension.

Trees are viewed as rooted through the inverse color map.  The index vector
records, for each vertex in increasing order, the color of the edge that
enters it from its parent (+1 red, -1 blue, 0 at the root).
"""

from __future__ import annotations

from collections import deque
from enum import Enum
from functools import lru_cache

from .combinatorics import (
    RED,
    ColoredGraph,
    colored_trees_on,
    enumerate_colored_trees,
    format_edges,
    rooted_view,
)
from .errors import DomainError


class Verdict(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


@lru_cache(maxsize=None)
def index_vector(g: ColoredGraph) -> tuple[int, ...]:
    _, parent, _ = rooted_view(g)
    return tuple(0 if v not in parent else (1 if parent[v] < v else -1) for v in g.vertices)


def rlex_less(a, b) -> bool:
    """Rightmost nonzero entry of a - b is negative."""
    if len(a) != len(b):
        raise DomainError("index vectors of different lengths")
    for x, y in zip(reversed(a), reversed(b)):
        if x != y:
            return x < y
    return False


def one_level_vertices(g: ColoredGraph) -> tuple[int, ...]:
    root, _, children = rooted_view(g)
    return children[root]


def descendants(g: ColoredGraph, x: int) -> tuple[int, ...]:
    _, _, children = rooted_view(g)
    out, stack = [], [x]
    while stack:
        v = stack.pop()
        out.append(v)
        stack.extend(children[v])
    return tuple(sorted(out))


def induced(g: ColoredGraph, verts) -> ColoredGraph:
    vs = set(verts)
    return ColoredGraph.make(vs, [e for e in g.edges if e[0] in vs and e[1] in vs])


@lru_cache(maxsize=None)
def subgraph_at(g: ColoredGraph, x: int) -> ColoredGraph:
    """G(x): the part hanging below x, rooted at x."""
    return induced(g, descendants(g, x))


def one_level_subgraphs(g: ColoredGraph) -> list[ColoredGraph]:
    """1-level subgraphs ordered by their vertex sets."""
    return sorted((subgraph_at(g, x) for x in one_level_vertices(g)), key=lambda s: s.vertices)


@lru_cache(maxsize=None)
def leq_ind(g: ColoredGraph, h: ColoredGraph) -> bool:
    if g == h:
        return True
    if g.vertices != h.vertices:
        return False
    ig, ih = index_vector(g), index_vector(h)
    same_counts = g.count(RED) == h.count(RED) and len(g.edges) == len(h.edges)
    if same_counts and rlex_less(ig, ih):
        return True
    if ig != ih:
        return False
    kg, kh = len(one_level_vertices(g)), len(one_level_vertices(h))
    if kg != kh:
        return kg < kh
    sg, sh = one_level_subgraphs(g), one_level_subgraphs(h)
    # subgraphs are paired by vertex set; differing families are incomparable
    if [s.vertices for s in sg] != [s.vertices for s in sh]:
        return False
    return all(leq_ind(a, b) for a, b in zip(sg, sh))


def ind_compare(g: ColoredGraph, h: ColoredGraph) -> Verdict:
    if g == h:
        return Verdict.EQUAL
    if leq_ind(g, h):
        return Verdict.LESS
    if leq_ind(h, g):
        return Verdict.GREATER
    return Verdict.INCOMPARABLE


def _join(parts, extra) -> ColoredGraph:
    verts, edges = [], []
    for p in parts:
        verts.extend(p.vertices)
        edges.extend(p.edges)
    edges.append(extra)
    return ColoredGraph.make(verts, edges)


def _without(g: ColoredGraph, verts) -> ColoredGraph:
    vs = set(verts)
    return induced(g, [v for v in g.vertices if v not in vs])


def operated_from(g: ColoredGraph, y: int) -> ColoredGraph:
    """Cut the edge above y and reattach the hanging part directly to the root, same color."""
    root, parent, _ = rooted_view(g)
    if y == root:
        raise DomainError(f"x{y} is the root")
    if y not in parent:
        raise DomainError(f"x{y} is not a vertex")
    p = parent[y]
    color = next(c for u, v, c in g.edges if {u, v} == {p, y})
    below = subgraph_at(g, y)
    return _join([_without(g, below.vertices), below], (root, y, color))


@lru_cache(maxsize=None)
def op_moves(g: ColoredGraph) -> frozenset:
    """Every H != G with G ->op H."""
    root, parent, _ = rooted_view(g)
    level_one = set(one_level_vertices(g))
    out = set()
    for y in g.vertices:
        if y != root and y not in level_one:
            out.add(operated_from(g, y))
    for x in level_one:
        sub = subgraph_at(g, x)
        color = next(c for u, v, c in g.edges if {u, v} == {root, x})
        rest = _without(g, sub.vertices)
        for h in op_moves(sub):
            new_root = rooted_view(h)[0]
            out.add(_join([rest, h], (root, new_root, color)))
    out.discard(g)
    return frozenset(out)


def op_reachability(n: int) -> dict[ColoredGraph, frozenset]:
    """Reflexive-transitive closure of ->op on the trees of size n."""
    trees = enumerate_colored_trees(n)
    out = {}
    for g in trees:
        seen = {g}
        queue = deque([g])
        while queue:
            for h in op_moves(queue.popleft()):
                if h not in seen:
                    seen.add(h)
                    queue.append(h)
        out[g] = frozenset(seen)
    return out


@lru_cache(maxsize=None)
def ind_key(g: ColoredGraph) -> tuple:
    """Sort key that strictly increases along every strict <=ind relation.

    Comparable trees share their edge counts; within those, clause (i) is
    the reversed index vector, clause (ii) the 1-level count and clause (iii)
    the keys of the 1-level subgraphs taken in vertex-set order.
    """
    subs = tuple((s.vertices, ind_key(s)) for s in one_level_subgraphs(g))
    return (
        g.count(RED),
        tuple(reversed(index_vector(g))),
        len(one_level_vertices(g)),
        subs,
    )


def linear_extension(n: int) -> list[ColoredGraph]:
    """Trees of size n in an order extending <=ind; ties broken by edge-list text."""
    return sorted(enumerate_colored_trees(n), key=lambda g: (ind_key(g), format_edges(g)))


def linear_extension_on(letters: tuple[int, ...]) -> list[ColoredGraph]:
    return sorted(colored_trees_on(tuple(letters)), key=lambda g: (ind_key(g), format_edges(g)))


def to_dot(n: int) -> str:
    """The ->op move diagram in Graphviz format."""
    lines = ["digraph op {"]
    trees = linear_extension(n)
    names = {g: f"g{i}" for i, g in enumerate(trees)}
    for g in trees:
        label = f"{format_edges(g)}\\n{index_vector(g)}"
        lines.append(f'  {names[g]} [label="{label}"];')
    for g in trees:
        for h in sorted(op_moves(g), key=format_edges):
            lines.append(f"  {names[g]} -> {names[h]};")
    lines.append("}")
    return "\n".join(lines)
