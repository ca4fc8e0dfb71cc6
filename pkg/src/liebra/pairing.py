"""The pairing between oriented two-colored graphs and bracket monomials.

An edge i -> j of G is sent to the nadir (lowest common ancestor) of the
leaves i and j in the plane tree T.  The edge travels counterclockwise at
its nadir when its source leaf sits in the right subtree; the pairing is
(-1)^(number of such edges) when the edges land bijectively and
color-preservingly on the internal vertices, and 0 otherwise.
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Mapping
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .combinatorics import (
    BLUE,
    RED,
    Color,
    ColoredGraph,
    OrientedGraph,
    _letters,
    enumerate_colored_trees,
    oriented_copy,
)
from .errors import DomainError
from .lincombo import LinCombo
from .monomials import (
    Monomial,
    basis_monomial,
    enumerate_monomials,
    internal_paths,
    is_leaf,
    letters,
    random_monomial,
    replace_at,
    subtree_at,
)
from .rewrite import relation_instance


@lru_cache(maxsize=4096)
def _nadir_table(t: Monomial) -> dict:
    """(src, dst) -> (nadir path, counterclockwise flag, nadir color)."""
    table = {}
    for path in internal_paths(t):
        c, a, b = subtree_at(t, path)
        for i in letters(a):
            for j in letters(b):
                table[(i, j)] = (path, False, c)
                table[(j, i)] = (path, True, c)
    return table


def path_nadir(t: Monomial, i: int, j: int) -> str:
    """Address (L/R string, root "") of the lowest common ancestor of leaves i and j."""
    try:
        return _nadir_table(t)[(i, j)][0]
    except KeyError:
        raise DomainError(f"x{i} and x{j} are not two distinct leaves of the tree") from None


@dataclass(frozen=True)
class BetaResult:
    assignment: dict
    is_bijection: bool
    color_preserving: bool
    ccw_count: int

    @property
    def value(self) -> int:
        if self.is_bijection and self.color_preserving:
            return -1 if self.ccw_count % 2 else 1
        return 0


def beta_map(g: OrientedGraph, t: Monomial) -> BetaResult:
    """Send every edge (indexed by position in ``g.edges``) to its nadir in ``t``."""
    table = _nadir_table(t)
    internal = set(internal_paths(t))
    assignment = {}
    ccw = 0
    preserving = True
    for idx, (s, d, c) in enumerate(g.edges):
        path, flag, color = table[(s, d)]
        assignment[idx] = path
        ccw += flag
        preserving &= color == c
    hit = list(assignment.values())
    bijective = len(hit) == len(set(hit)) and set(hit) == internal
    return BetaResult(assignment, bijective, preserving, ccw)


def pair(g: OrientedGraph, t: Monomial) -> int:
    table = _nadir_table(t)
    if len(g.edges) != len(letters(t)) - 1:
        return 0
    seen = set()
    ccw = 0
    for s, d, c in g.edges:
        entry = table.get((s, d))
        if entry is None:
            return 0
        path, flag, color = entry
        if color != c or path in seen:
            return 0
        seen.add(path)
        ccw += flag
    return -1 if ccw % 2 else 1


def _as_items(x) -> Iterable:
    if isinstance(x, Mapping):
        return x.items()
    return ((x, 1),)


def pair_combo(beta, alpha) -> int:
    """Bilinear extension; either side may be a single key or a combination."""
    total = 0
    for g, a in _as_items(beta):
        for t, b in _as_items(alpha):
            total += a * b * pair(g, t)
    return total


def pairing_vector(t: Monomial) -> dict[ColoredGraph, int]:
    """All trees G with pair(o_G, t) != 0, mapped to that value.

    Each internal vertex independently picks one leaf from each side; the
    chosen edges always form a spanning tree, and the consistent orientation
    fixes the sign.  This avoids scanning all candidate graphs.
    """
    nodes = []
    for path in internal_paths(t):
        c, a, b = subtree_at(t, path)
        nodes.append([(i, j, c) for i in letters(a) for j in letters(b)])
    verts = letters(t)
    out = {}
    for choice in itertools.product(*nodes):
        ccw = 0
        for i, j, c in choice:
            src = min(i, j) if c == RED else max(i, j)
            ccw += src == j
        g = ColoredGraph.make(verts, choice)
        out[g] = -1 if ccw % 2 else 1
    return out


def pairing_support(g: OrientedGraph) -> dict[Monomial, int]:
    """All monomials T with pair(g, T) != 0, mapped to that value.

    The root of such a T is the nadir of exactly one edge, and removing that
    edge must split g into the leaf sets of the two subtrees.
    """
    if len(g.edges) != g.n - 1:
        return {}

    def split(verts: frozenset, edges: tuple) -> list[tuple[Monomial, int]]:
        if len(verts) == 1:
            return [(next(iter(verts)), 0)]
        out = []
        for idx, (s, d, c) in enumerate(edges):
            rest = edges[:idx] + edges[idx + 1:]
            side = _component(s, rest)
            if d in side:
                continue
            other = verts - side
            e_a = tuple(e for e in rest if e[0] in side)
            e_b = tuple(e for e in rest if e[0] in other)
            if len(e_a) != len(side) - 1 or len(e_b) != len(other) - 1:
                continue
            subs_a, subs_b = split(side, e_a), split(other, e_b)
            for ta, na in subs_a:
                for tb, nb in subs_b:
                    out.append(((c, ta, tb), na + nb))  # source on the left
                    out.append(((c, tb, ta), na + nb + 1))
        return out

    return {t: -1 if k % 2 else 1 for t, k in split(frozenset(g.vertices), g.edges)}


def _component(start: int, edges: tuple) -> frozenset:
    seen = {start}
    grew = True
    while grew:
        grew = False
        for s, d, _ in edges:
            if (s in seen) != (d in seen):
                seen.update((s, d))
                grew = True
    return frozenset(seen)


@dataclass
class PairingMatrix:
    order: list
    entries: np.ndarray

    def triangular_violations(self) -> list[tuple[int, int]]:
        """Nonzero cells strictly below the diagonal."""
        rows, cols = np.nonzero(np.tril(self.entries, -1))
        return list(zip(rows.tolist(), cols.tolist()))

    def is_upper_triangular(self) -> bool:
        return not np.any(np.tril(self.entries, -1))

    def diagonal_ok(self) -> bool:
        return bool(np.all(np.abs(np.diag(self.entries)) == 1))

    def determinant(self) -> int:
        if self.is_upper_triangular() or not np.any(np.triu(self.entries, 1)):
            return int(np.prod(np.diag(self.entries).astype(object)))
        return bareiss_determinant(self.entries.tolist())


def bareiss_determinant(rows: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[-1][-1] if n else 1


def matrix_against(rows: Sequence[ColoredGraph], cols: Sequence[Monomial]) -> np.ndarray:
    """entry(i, j) = pair(o_{rows[i]}, cols[j])."""
    index = {g: i for i, g in enumerate(rows)}
    out = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, t in enumerate(cols):
        for g, v in pairing_vector(t).items():
            i = index.get(g)
            if i is not None:
                out[i, j] = v
    return out


def pairing_matrix(n: int, order: Sequence[ColoredGraph]) -> PairingMatrix:
    order = list(order)
    if sorted(map(str, order)) != sorted(map(str, enumerate_colored_trees(n))):
        raise DomainError("order is not a permutation of the pattern-avoiding trees")
    return PairingMatrix(order, matrix_against(order, [basis_monomial(g) for g in order]))


# relation generators on the monomial side

THETA_KINDS = ("S1", "S2", "J1", "J2", "MJ")


def _theta_site_kind(sub: Monomial) -> list[str]:
    if is_leaf(sub):
        return []
    c, _, b = sub
    kinds = ["S1" if c == RED else "S2"]
    if not is_leaf(b):
        if b[0] == c:
            kinds.append("J1" if c == RED else "J2")
        else:
            kinds.append("MJ")
    return kinds


def _theta_at(m: Monomial, path: str, kind: str) -> LinCombo:
    sub = subtree_at(m, path)
    _, a, rest = sub
    if kind in ("S1", "S2"):
        ident = relation_instance(kind, a, rest)
    else:
        ident = relation_instance(kind, a, rest[1], rest[2])
    return ident.map_keys(lambda t: replace_at(m, path, t))


def _canon(combo: LinCombo):
    return frozenset(combo.items())


def theta_relation_generators(n: int, kind: str, samples: int | None = None, seed: int = 0) -> Iterator[LinCombo]:
    """Generators of J_n of the given kind.

    Exhaustive over every monomial and every matching internal vertex when
    ``samples`` is None (deduplicated), otherwise ``samples`` random sites.
    """
    if kind not in THETA_KINDS:
        raise ValueError(f"unknown relation kind {kind!r}")
    if samples is None:
        seen = set()
        for m in enumerate_monomials(n):
            for path in internal_paths(m):
                if kind in _theta_site_kind(subtree_at(m, path)):
                    combo = _theta_at(m, path, kind)
                    key = _canon(combo)
                    if combo and key not in seen:
                        seen.add(key)
                        yield combo
        return
    if n < (2 if kind in ("S1", "S2") else 3):
        return
    rng = random.Random(seed)
    count = 0
    while count < samples:
        m = random_monomial(range(1, n + 1), rng)
        sites = [p for p in internal_paths(m) if kind in _theta_site_kind(subtree_at(m, p))]
        if not sites:
            continue
        yield _theta_at(m, rng.choice(sites), kind)
        count += 1


# relation generators on the graph side

GAMMA_KINDS = ("S1", "S2", "J1", "J2", "MJ", "multi", "disconnected")


def _edge_pool(n: int) -> list[tuple[int, int, Color]]:
    return [(s, d, c) for s in range(1, n + 1) for d in range(1, n + 1) if s != d for c in (RED, BLUE)]


def _graph(n: int, edges) -> OrientedGraph:
    return OrientedGraph.make(_letters(n), edges)


def _gamma_jacobi(n, rest, i, j, k, color) -> LinCombo:
    return LinCombo(
        (_graph(n, list(rest) + pair_), 1)
        for pair_ in (
            [(i, j, color), (j, k, color)],
            [(j, k, color), (k, i, color)],
            [(k, i, color), (i, j, color)],
        )
    )


def _gamma_mixed(n, rest, i, j, k) -> LinCombo:
    terms = []
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        terms.append((_graph(n, list(rest) + [(a, b, BLUE), (b, c, RED)]), 1))
        terms.append((_graph(n, list(rest) + [(a, b, RED), (b, c, BLUE)]), 1))
    return LinCombo(terms)


def _disconnected(g: OrientedGraph) -> bool:
    from .combinatorics import _connected

    return not _connected(g.vertices, [(s, d) for s, d, _ in g.edges])


def _multi(g: OrientedGraph) -> bool:
    pairs = [(min(s, d), max(s, d)) for s, d, _ in g.edges]
    return len(pairs) != len(set(pairs))


def _gamma_from(n: int, kind: str, rest: tuple, extra) -> LinCombo | None:
    """One generator built from ``rest`` edges plus the kind-specific data."""
    if kind in ("S1", "S2"):
        g = _graph(n, rest)
        idx = extra
        s, d, c = g.edges[idx]
        if (c == RED) != (kind == "S1"):
            return None
        flipped = list(g.edges)
        flipped[idx] = (d, s, c)
        return LinCombo([(g, 1), (_graph(n, flipped), 1)])
    if kind in ("J1", "J2"):
        i, j, k = extra
        return _gamma_jacobi(n, rest, i, j, k, RED if kind == "J1" else BLUE)
    if kind == "MJ":
        i, j, k = extra
        return _gamma_mixed(n, rest, i, j, k)
    g = _graph(n, rest)
    if kind == "multi" and _multi(g):
        return LinCombo.single(g)
    if kind == "disconnected" and _disconnected(g):
        return LinCombo.single(g)
    return None


def gamma_relation_generators(
    n: int, kind: str, samples: int | None = None, seed: int = 0, edges: int | None = None
) -> Iterator[LinCombo]:
    """Generators of I_n on graphs with ``edges`` edges (default n-1).

    Symmetry and Jacobi kinds accept an arbitrary set of remaining edges;
    ``multi`` and ``disconnected`` yield single graphs.
    """
    m = n - 1 if edges is None else edges
    if kind not in GAMMA_KINDS:
        raise ValueError(f"unknown relation kind {kind!r}")
    need = {"S1": 2, "S2": 2, "multi": 2, "disconnected": 2}.get(kind, 3)
    if n < need or m < {"S1": 1, "S2": 1}.get(kind, 2):
        return
    pool = _edge_pool(n)
    triples = list(itertools.permutations(range(1, n + 1), 3))
    if samples is None:
        seen = set()
        if kind in ("S1", "S2", "multi", "disconnected"):
            sources = (
                (rest, idx)
                for rest in itertools.combinations_with_replacement(pool, m)
                for idx in (range(m) if kind in ("S1", "S2") else [None])
            )
        else:
            sources = (
                (rest, t)
                for rest in itertools.combinations_with_replacement(pool, m - 2)
                for t in triples
            )
        for rest, extra in sources:
            combo = _gamma_from(n, kind, rest, extra)
            if combo:
                key = _canon(combo)
                if key not in seen:
                    seen.add(key)
                    yield combo
        return
    rng = random.Random(seed)
    count = 0
    while count < samples:
        if kind in ("S1", "S2", "multi", "disconnected"):
            rest = [rng.choice(pool) for _ in range(m)]
            if kind == "multi":
                s, d, _ = rest[0]
                rest[-1] = (rng.choice([(s, d), (d, s)]) + (rng.choice((RED, BLUE)),))
            extra = rng.randrange(m) if kind in ("S1", "S2") else None
            if kind in ("S1", "S2"):
                s, d, _ = rest[extra]
                rest[extra] = (s, d, RED if kind == "S1" else BLUE)
                extra = sorted(rest).index(rest[extra])
        else:
            rest = [rng.choice(pool) for _ in range(m - 2)]
            extra = rng.choice(triples)
        combo = _gamma_from(n, kind, tuple(rest), extra)
        if combo:
            yield combo
            count += 1
