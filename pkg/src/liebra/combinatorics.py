"""Rooted trees, two-colored graphs and the color bijection between them.

Vertices are positive integers standing for the ordered letters x_1 < x_2 < ...
Most functions take a plain ``n`` (alphabet x_1..x_n); the ``*_on`` variants
accept an arbitrary sorted tuple of letters, which the recursive constructions
elsewhere in the package need for sub-alphabets.
"""

from __future__ import annotations

import heapq
import itertools
from collections import defaultdict
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError, EmptyAlphabetError, PatternViolationError


class Color(IntEnum):
    RED = 0
    BLUE = 1

    @property
    def char(self) -> str:
        return "rb"[self]

    @classmethod
    def parse(cls, text: str) -> "Color":
        t = text.strip().lower()
        if t in ("r", "red"):
            return cls.RED
        if t in ("b", "blue"):
            return cls.BLUE
        raise DomainError(f"unknown color {text!r}")


RED = Color.RED
BLUE = Color.BLUE

PATTERNS = ("1r3r2", "2b1b3", "1r2b3")


def _letters(n: int) -> tuple[int, ...]:
    if n < 1:
        raise EmptyAlphabetError()
    return tuple(range(1, n + 1))


@dataclass(frozen=True)
class ColoredGraph:
    """Undirected edge-colored multigraph; edges stored as (u, v, color), u < v."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, Color], ...]

    @classmethod
    def make(cls, vertices: Iterable[int], edges: Iterable[tuple]) -> "ColoredGraph":
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        norm = []
        for u, v, c in edges:
            if u == v:
                raise DomainError(f"loop at x{u}")
            if u not in vset or v not in vset:
                raise DomainError(f"edge {{x{u},x{v}}} leaves the alphabet")
            norm.append((min(u, v), max(u, v), Color(c)))
        return cls(verts, tuple(sorted(norm)))

    @classmethod
    def on(cls, n: int, edges: Iterable[tuple]) -> "ColoredGraph":
        return cls.make(_letters(n), edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def adjacency(self) -> dict[int, list[tuple[int, Color]]]:
        adj: dict[int, list[tuple[int, Color]]] = {v: [] for v in self.vertices}
        for u, v, c in self.edges:
            adj[u].append((v, c))
            adj[v].append((u, c))
        return adj

    def has_multi_edge(self) -> bool:
        pairs = [(u, v) for u, v, _ in self.edges]
        return len(pairs) != len(set(pairs))

    def is_connected(self) -> bool:
        return _connected(self.vertices, [(u, v) for u, v, _ in self.edges])

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1 and self.is_connected()

    def count(self, color: Color) -> int:
        return sum(1 for e in self.edges if e[2] == color)

    def __str__(self) -> str:
        return format_edges(self)


TwoColoredTree = ColoredGraph


@dataclass(frozen=True)
class OrientedGraph:
    """Directed edge-colored multigraph; edges stored as (src, dst, color)."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, Color], ...]

    @classmethod
    def make(cls, vertices: Iterable[int], edges: Iterable[tuple]) -> "OrientedGraph":
        verts = tuple(sorted(set(vertices)))
        vset = set(verts)
        norm = []
        for s, d, c in edges:
            if s == d:
                raise DomainError(f"loop at x{s}")
            if s not in vset or d not in vset:
                raise DomainError(f"edge x{s}->x{d} leaves the alphabet")
            norm.append((s, d, Color(c)))
        return cls(verts, tuple(sorted(norm)))

    @classmethod
    def on(cls, n: int, edges: Iterable[tuple]) -> "OrientedGraph":
        return cls.make(_letters(n), edges)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def __str__(self) -> str:
        return format_edges(self)


def format_edges(g) -> str:
    """Compact one-line edge list: ``r1-2 b1-3`` or ``r1>2 b3>1`` when oriented."""
    sep = ">" if isinstance(g, OrientedGraph) else "-"
    if not g.edges:
        return "{" + ",".join(f"x{v}" for v in g.vertices) + "}"
    return " ".join(f"{c.char}{u}{sep}{v}" for u, v, c in g.edges)


def _connected(vertices: Sequence[int], pairs: Iterable[tuple[int, int]]) -> bool:
    if not vertices:
        return True
    adj = defaultdict(list)
    for u, v in pairs:
        adj[u].append(v)
        adj[v].append(u)
    seen = {vertices[0]}
    stack = [vertices[0]]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vertices)


@dataclass(frozen=True)
class RootedTree:
    """Uncolored labeled tree with a root; arcs are (parent, child) sorted by child."""

    vertices: tuple[int, ...]
    root: int
    arcs: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def parent(self) -> dict[int, int]:
        return {c: p for p, c in self.arcs}

    def increasing_edges(self) -> int:
        return sum(1 for p, c in self.arcs if p < c)


def prufer_decode(seq: Sequence[int], letters: Sequence[int]) -> list[tuple[int, int]]:
    """Edges of the labeled free tree with Prüfer sequence ``seq`` (entries are letters)."""
    n = len(letters)
    if n == 1:
        return []
    index = {v: i for i, v in enumerate(letters)}
    degree = [1] * n
    for s in seq:
        degree[index[s]] += 1
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        j = index[s]
        edges.append((letters[leaf], s))
        degree[j] -= 1
        if degree[j] == 1:
            heapq.heappush(leaves, j)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((letters[u], letters[v]))
    return edges


def _orient(letters: Sequence[int], edges: Sequence[tuple[int, int]], root: int) -> RootedTree:
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    arcs = []
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                arcs.append((u, w))
                stack.append(w)
    arcs.sort(key=lambda a: a[1])
    return RootedTree(tuple(letters), root, tuple(arcs))


def rooted_trees_on(letters: Sequence[int]) -> Iterator[RootedTree]:
    """All rooted trees on ``letters``, ordered by (Prüfer sequence, root)."""
    letters = tuple(sorted(letters))
    if not letters:
        raise EmptyAlphabetError()
    for seq in itertools.product(letters, repeat=max(len(letters) - 2, 0)):
        edges = prufer_decode(seq, letters)
        for root in letters:
            yield _orient(letters, edges, root)


def enumerate_rooted_trees(n: int) -> list[RootedTree]:
    return list(rooted_trees_on(_letters(n)))


def color_map(tree: RootedTree) -> ColoredGraph:
    """Color increasing edges red and decreasing edges blue."""
    return ColoredGraph.make(tree.vertices, ((p, c, RED if p < c else BLUE) for p, c in tree.arcs))


def pattern_violations(g: ColoredGraph) -> list[tuple[str, tuple[int, int, int]]]:
    """Occurrences of the three forbidden patterns, each reported with i < j < k."""
    found = set()
    for v, nbrs in g.adjacency().items():
        for (a, ca), (b, cb) in itertools.combinations(nbrs, 2):
            if a == b:
                continue
            lo, hi = min(a, b), max(a, b)
            if ca == cb == RED and lo < hi < v:
                found.add(("1r3r2", (lo, hi, v)))
            if ca == cb == BLUE and v < lo:
                found.add(("2b1b3", (v, lo, hi)))
            if ca != cb:
                red_nbr, blue_nbr = (a, b) if ca == RED else (b, a)
                if red_nbr < v < blue_nbr:
                    found.add(("1r2b3", (red_nbr, v, blue_nbr)))
    return sorted(found, key=lambda f: (f[1], PATTERNS.index(f[0])))


def is_pattern_avoiding_tree(g: ColoredGraph) -> bool:
    return g.is_tree() and not g.has_multi_edge() and not pattern_violations(g)


def inverse_color_map(g: ColoredGraph) -> RootedTree:
    """Recover the rooted tree whose coloring is ``g``."""
    if not g.is_tree() or g.has_multi_edge():
        raise PatternViolationError(f"{format_edges(g)} is not a tree")
    bad = pattern_violations(g)
    if bad:
        pattern, triple = bad[0]
        raise PatternViolationError(
            "pattern {} with (i,j,k)=({},{},{})".format(pattern, *triple), pattern, triple
        )
    return _inverse_unchecked(g)


@lru_cache(maxsize=None)
def _inverse_unchecked(g: ColoredGraph) -> RootedTree:
    heads = set()
    arcs = []
    for u, v, c in g.edges:
        p, ch = (u, v) if c == RED else (v, u)
        arcs.append((p, ch))
        heads.add(ch)
    sources = [v for v in g.vertices if v not in heads]
    assert len(sources) == 1, g
    arcs.sort(key=lambda a: a[1])
    return RootedTree(g.vertices, sources[0], tuple(arcs))


@lru_cache(maxsize=None)
def rooted_view(g: ColoredGraph) -> tuple[int, dict[int, int], dict[int, tuple[int, ...]]]:
    """(root, parent map, sorted children map) of a pattern-avoiding tree."""
    t = inverse_color_map(g)
    children: dict[int, list[int]] = {v: [] for v in g.vertices}
    for p, c in t.arcs:
        children[p].append(c)
    return t.root, t.parent, {v: tuple(sorted(cs)) for v, cs in children.items()}


def root_of(g: ColoredGraph) -> int:
    return rooted_view(g)[0]


@lru_cache(maxsize=None)
def colored_trees_on(letters: tuple[int, ...]) -> tuple[ColoredGraph, ...]:
    """The pattern-avoiding trees on ``letters`` in enumeration order."""
    return tuple(color_map(t) for t in rooted_trees_on(letters))


def enumerate_colored_trees(n: int) -> list[ColoredGraph]:
    return list(colored_trees_on(_letters(n)))


def oriented_copy(g: ColoredGraph) -> OrientedGraph:
    """Orient red edges upward (small to large) and blue edges downward."""
    return OrientedGraph.make(
        g.vertices, ((u, v, c) if c == RED else (v, u, c) for u, v, c in g.edges)
    )


def unoriented_copy(g: OrientedGraph) -> ColoredGraph:
    return ColoredGraph.make(g.vertices, g.edges)


def edge_is_consistent(src: int, dst: int, color: Color) -> bool:
    return (src < dst) if color == RED else (src > dst)


def inconsistent_edges(g: OrientedGraph) -> list[tuple[int, int, Color]]:
    return [e for e in g.edges if not edge_is_consistent(*e)]


def is_consistent(g: OrientedGraph) -> bool:
    return not inconsistent_edges(g)


@dataclass(frozen=True)
class CountTable:
    n: int
    a: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.a)

    def is_symmetric(self) -> bool:
        return self.a == self.a[::-1]


def count_by_increasing_edges(n: int) -> CountTable:
    """Tally all n^(n-1) rooted trees by their number of increasing edges.

    Each free tree is decoded once; moving the root across an edge flips
    only that edge's direction, so the tally for every root follows from a
    single traversal.
    """
    letters = _letters(n)
    a = [0] * n
    if n == 1:
        return CountTable(1, (1,))
    for seq in itertools.product(letters, repeat=n - 2):
        adj = [[] for _ in range(n + 1)]
        for u, v in prufer_decode(seq, letters):
            adj[u].append(v)
            adj[v].append(u)
        # orient from x1, then reroot along the traversal order
        order = [1]
        parent = [0] * (n + 1)
        parent[1] = -1
        inc = 0
        for u in order:
            for w in adj[u]:
                if w != parent[u]:
                    parent[w] = u
                    inc += u < w
                    order.append(w)
        count = [0] * (n + 1)
        count[1] = inc
        a[inc] += 1
        for w in order[1:]:
            p = parent[w]
            count[w] = count[p] - (p < w) + (w < p)
            a[count[w]] += 1
    return CountTable(n, tuple(a))


def increasing_edge_polynomial(n: int) -> list[int]:
    """Coefficients (ascending powers) of prod_{k=1}^{n-1} (k x + (n - k))."""
    if n < 1:
        raise EmptyAlphabetError()
    coeffs = [1]
    for k in range(1, n):
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * (n - k)
            nxt[i + 1] += c * k
        coeffs = nxt
    return coeffs


def set_partitions(letters: Sequence[int]) -> Iterator[list[tuple[int, ...]]]:
    """Set partitions of ``letters``, blocks sorted by their maxima."""
    letters = sorted(letters)
    if not letters:
        yield []
        return
    *rest, last = letters
    # the block holding the largest letter comes last once blocks are sorted by max
    for k in range(len(rest) + 1):
        for companions in itertools.combinations(rest, k):
            remaining = [x for x in rest if x not in companions]
            for part in set_partitions(remaining):
                yield part + [tuple(companions) + (last,)]
