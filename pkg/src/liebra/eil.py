"""The spanning set O_n(X) of oriented graphs and normalization onto it.

A graph that is not a tree is zero (disconnected graphs and multi-edges are
generators of the relation module, and a cycle reduces to those).  A tree is
first made consistent by reversing edges, each reversal costing a sign, and
then rewritten by a recursion on the largest letter:

(i)   a leaf hangs below its neighbour: peel it and normalize the rest;
(ii)  a red edge meets x_n: split there, normalize both halves, and fix the
      glued products with a same-color Jacobi rewrite;
(iii) only blue edges meet x_n: as (ii), using the same-color or the mixed
      Jacobi rewrite depending on the second edge at the meeting vertex.

Consistent trees are handled as plain two-colored graphs; the orientation is
implied.
"""

from __future__ import annotations

import threading
from collections import defaultdict

from .combinatorics import (
    BLUE,
    RED,
    Color,
    ColoredGraph,
    OrientedGraph,
    _connected,
    _letters,
    edge_is_consistent,
    enumerate_colored_trees,
    is_pattern_avoiding_tree,
    oriented_copy,
)
from .errors import InternalInvariantError
from .lincombo import LinCombo, linear_extend

MAX_DEPTH = 500


def eil_basis(n: int) -> list[OrientedGraph]:
    return [oriented_copy(g) for g in enumerate_colored_trees(n)]


def is_oriented_tree(g: OrientedGraph) -> bool:
    pairs = [(min(s, d), max(s, d)) for s, d, _ in g.edges]
    return (
        len(pairs) == g.n - 1
        and len(set(pairs)) == len(pairs)
        and _connected(g.vertices, pairs)
    )


def has_unique_source(g: OrientedGraph) -> bool:
    heads = {d for _, d, _ in g.edges}
    return sum(1 for v in g.vertices if v not in heads) == 1


def consistent_form(g: OrientedGraph) -> tuple[int, ColoredGraph]:
    """Reverse inconsistent edges; returns the accumulated sign and the unoriented graph."""
    sign = 1
    for s, d, c in g.edges:
        if not edge_is_consistent(s, d, c):
            sign = -sign
    return sign, ColoredGraph.make(g.vertices, g.edges)


def _graph(verts, edges) -> OrientedGraph:
    return OrientedGraph.make(verts, edges)


class _EilNormalizer:
    """Recursive rewriting with memoization on consistent trees."""

    def __init__(self):
        self.memo: dict[ColoredGraph, LinCombo] = {}
        self.depth = 0

    def oriented(self, g: OrientedGraph) -> LinCombo:
        if not is_oriented_tree(g):
            return LinCombo()
        sign, u = consistent_form(g)
        return self.tree(u) * sign

    def tree(self, u: ColoredGraph) -> LinCombo:
        hit = self.memo.get(u)
        if hit is not None:
            return hit
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise InternalInvariantError(f"graph normalization depth exceeded at {u}")
        try:
            out = self._tree(u)
        finally:
            self.depth -= 1
        self.memo[u] = out
        return out

    def _tree(self, u: ColoredGraph) -> LinCombo:
        if u.n == 1 or is_pattern_avoiding_tree(u):
            return LinCombo.single(u)
        leaf = _hanging_leaf(u)
        if leaf is not None:
            x, y, c = leaf
            rest = _drop(u, [x])
            return LinCombo(
                (_glue(g2, (x, y, c)), coeff) for g2, coeff in self.tree(rest).items()
            )
        top = u.vertices[-1]
        at_top = sorted((v if w == top else w, c) for v, w, c in u.edges if top in (v, w))
        reds = [(y, c) for y, c in at_top if c == RED]
        # case (ii) takes a red edge at x_n, case (iii) the blue edge to the smallest neighbour
        y, c = reds[0] if reds else at_top[0]
        side_x, side_y = _split(u, top, y)
        acc = LinCombo()
        for g1, a in self.tree(side_x).items():
            for g2, b in self.tree(side_y).items():
                acc = acc + self._glued(g1, g2, (y, top, c)) * (a * b)
        return acc

    def _glued(self, g1: ColoredGraph, g2: ColoredGraph, e) -> LinCombo:
        """Normalize (G1, e, G2) for normalized halves G1 (holding x_n) and G2."""
        y, x, c = e
        p = _glue(g2, e, g1)
        if _hanging_leaf(p) is not None or is_pattern_avoiding_tree(p):
            return self.tree(p)
        if c == RED:
            # both halves are paths ending in red edges into x = x_n
            z = _parent_in(g1, x)
            rest = [ed for ed in p.edges if {ed[0], ed[1]} not in ({z, x}, {y, x})]
            terms = _same_color_rewrite(z, y, x, RED)
        else:
            # paths end at y: x -> y blue and z -> y inside G2
            z = _parent_in(g2, y)
            kappa = next(cc for a, b, cc in g2.edges if {a, b} == {z, y})
            rest = [ed for ed in p.edges if {ed[0], ed[1]} not in ({z, y}, {x, y})]
            if kappa == BLUE:
                terms = _same_color_rewrite(z, x, y, BLUE)
            else:
                terms = _mixed_rewrite(x, y, z)
        acc = LinCombo()
        for pair_edges, coeff in terms:
            acc = acc + self.oriented(_graph(p.vertices, _oriented_rest(rest) + pair_edges)) * coeff
        return acc


def _oriented_rest(edges) -> list:
    return [(u, v, c) if c == RED else (v, u, c) for u, v, c in edges]


def _same_color_rewrite(a, b, c, kappa) -> list:
    """{a->c, b->c} of one color equals {c->b, b->a} + {b->a, a->c}."""
    return [
        ([(c, b, kappa), (b, a, kappa)], 1),
        ([(b, a, kappa), (a, c, kappa)], 1),
    ]


def _mixed_rewrite(x, y, z) -> list:
    """{x->y blue, z->y red} equals the other five terms of the mixed Jacobi sum on (x, y, z)."""
    return [
        ([(x, y, RED), (y, z, BLUE)], 1),
        ([(y, z, BLUE), (z, x, RED)], 1),
        ([(y, z, RED), (z, x, BLUE)], 1),
        ([(z, x, BLUE), (x, y, RED)], 1),
        ([(z, x, RED), (x, y, BLUE)], 1),
    ]


def _adjacency(u: ColoredGraph):
    adj = defaultdict(list)
    for a, b, c in u.edges:
        adj[a].append((b, c))
        adj[b].append((a, c))
    return adj


def _hanging_leaf(u: ColoredGraph):
    """A leaf x whose edge to y is consistently oriented y -> x, as (x, y, color)."""
    adj = _adjacency(u)
    for x in u.vertices:
        if len(adj[x]) == 1:
            y, c = adj[x][0]
            if (c == RED and y < x) or (c == BLUE and y > x):
                return (x, y, c)
    return None


def _drop(u: ColoredGraph, verts) -> ColoredGraph:
    vs = set(verts)
    keep = [v for v in u.vertices if v not in vs]
    return ColoredGraph.make(keep, [e for e in u.edges if e[0] not in vs and e[1] not in vs])


def _split(u: ColoredGraph, x: int, y: int) -> tuple[ColoredGraph, ColoredGraph]:
    """Remove the edge {x, y}; return the components holding x and y."""
    rest = [e for e in u.edges if {e[0], e[1]} != {x, y}]
    side = {x}
    grew = True
    while grew:
        grew = False
        for a, b, _ in rest:
            if (a in side) != (b in side):
                side.update((a, b))
                grew = True
    other = [v for v in u.vertices if v not in side]
    return (
        ColoredGraph.make(side, [e for e in rest if e[0] in side]),
        ColoredGraph.make(other, [e for e in rest if e[0] not in side]),
    )


def _glue(g2: ColoredGraph, e, g1: ColoredGraph | None = None) -> ColoredGraph:
    a, b, c = e
    verts = list(g2.vertices) + ([a] if g1 is None else list(g1.vertices))
    edges = list(g2.edges) + ([] if g1 is None else list(g1.edges)) + [(a, b, c)]
    return ColoredGraph.make(verts, edges)


def _parent_in(g: ColoredGraph, v: int) -> int:
    """Tail of the unique edge entering v in the consistent orientation of g."""
    for a, b, c in g.edges:
        src, dst = (a, b) if c == RED else (b, a)
        if dst == v:
            return src
    raise InternalInvariantError(f"x{v} has no incoming edge in {g}")


_local = threading.local()


def _normalizer() -> _EilNormalizer:
    norm = getattr(_local, "normalizer", None)
    if norm is None:
        norm = _local.normalizer = _EilNormalizer()
    return norm


def eil_normalize(g: OrientedGraph) -> LinCombo:
    """Write g as a combination of oriented copies of pattern-avoiding trees."""
    return _normalizer().oriented(g).map_keys(oriented_copy)


def eil_normalize_combo(combo) -> LinCombo:
    return linear_extend(eil_normalize, combo)


def graph_on(n: int, edges) -> OrientedGraph:
    return OrientedGraph.make(_letters(n), [(s, d, Color(c)) for s, d, c in edges])
