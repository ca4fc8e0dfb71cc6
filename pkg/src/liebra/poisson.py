"""Multilinear Poisson monomials with two compatible brackets.

A monomial is a quasi-binary tree: a ``Product`` (commutative, factors kept
sorted by their smallest letter) of factors, each a letter or a ``Bracket``
whose two arguments are again products.  Products correspond to even-level
vertices, brackets and letters to odd-level ones.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence, Union

import numpy as np

from .combinatorics import (
    BLUE,
    RED,
    Color,
    ColoredGraph,
    OrientedGraph,
    _letters,
    oriented_copy,
    set_partitions,
)
from .errors import DomainError, MonomialSyntaxError
from .lincombo import LinCombo
from .monomials import (
    Monomial,
    _Parser,
    basis_monomial,
    check_multilinear,
    is_leaf,
)
from .orders import linear_extension_on
from .pairing import matrix_against
from .rewrite import lc_normalize, relation_instance


@dataclass(frozen=True)
class Bracket:
    color: Color
    left: "Product"
    right: "Product"

    def __str__(self) -> str:
        o, c = ("[", "]") if self.color == RED else ("<", ">")
        return f"{o}{self.left},{self.right}{c}"


Factor = Union[int, Bracket]


def _min_letter(f: Factor) -> int:
    return f if isinstance(f, int) else min(f.left.min_letter, f.right.min_letter)


@dataclass(frozen=True)
class Product:
    factors: tuple

    @classmethod
    def of(cls, factors) -> "Product":
        flat = []
        for f in factors:
            if isinstance(f, Product):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if not flat:
            raise DomainError("empty product")
        return cls(tuple(sorted(flat, key=_min_letter)))

    @property
    def min_letter(self) -> int:
        return _min_letter(self.factors[0])

    def __str__(self) -> str:
        return "*".join(f"x{f}" if isinstance(f, int) else str(f) for f in self.factors)


PoissonMonomial = Product


@lru_cache(maxsize=None)
def poisson_letters(p) -> tuple[int, ...]:
    if isinstance(p, int):
        return (p,)
    if isinstance(p, Bracket):
        return tuple(sorted(poisson_letters(p.left) + poisson_letters(p.right)))
    return tuple(sorted(x for f in p.factors for x in poisson_letters(f)))


def print_poisson(p: Product) -> str:
    return str(p)


class _PoissonParser(_Parser):
    def product(self) -> Product:
        factors = [self.factor()]
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                factors.append(self.factor())
            elif ch and ch in "x[<(":
                factors.append(self.factor())
            else:
                return Product.of(factors)

    def factor(self):
        ch = self.peek()
        if ch == "x":
            return self.letter()
        if ch == "(":
            self.pos += 1
            inner = self.product()
            self.expect(")")
            return inner
        if ch in ("[", "<"):
            close = "]" if ch == "[" else ">"
            self.pos += 1
            left = self.product()
            self.expect(",")
            right = self.product()
            self.expect(close)
            return Bracket(RED if ch == "[" else BLUE, left, right)
        raise MonomialSyntaxError(f"unexpected {ch or 'end of input'!r}", self.pos)


def _all_letters(p) -> list[int]:
    if isinstance(p, int):
        return [p]
    if isinstance(p, Bracket):
        return _all_letters(p.left) + _all_letters(p.right)
    return [x for f in p.factors for x in _all_letters(f)]


def parse_poisson(text: str, n: int | None = None) -> Product:
    """Parse products written with ``*``, juxtaposition or parentheses inside brackets."""
    p = _PoissonParser(text)
    out = p.product()
    p.skip()
    if p.pos != len(text):
        raise MonomialSyntaxError("trailing input", p.pos)
    check_multilinear(_all_letters(out), n)
    return out


def from_lie(m: Monomial) -> Factor:
    if is_leaf(m):
        return m
    c, a, b = m
    return Bracket(c, Product((from_lie(a),)), Product((from_lie(b),)))


def to_lie(f: Factor) -> Monomial | None:
    """The bracket monomial of a factor built without products, else None."""
    if isinstance(f, int):
        return f
    if len(f.left.factors) != 1 or len(f.right.factors) != 1:
        return None
    a, b = to_lie(f.left.factors[0]), to_lie(f.right.factors[0])
    if a is None or b is None:
        return None
    return (f.color, a, b)


def product_of_lie(monos: Sequence[Monomial]) -> Product:
    return Product.of(from_lie(m) for m in monos)


# forests and the product basis


@dataclass(frozen=True)
class Forest:
    components: tuple  # ColoredGraph per block, blocks ordered by their maxima

    @property
    def partition(self) -> tuple[tuple[int, ...], ...]:
        return tuple(g.vertices for g in self.components)

    def oriented(self) -> OrientedGraph:
        verts, edges = [], []
        for g in self.components:
            o = oriented_copy(g)
            verts.extend(o.vertices)
            edges.extend(o.edges)
        return OrientedGraph.make(verts, edges)

    def basis_element(self) -> Product:
        return product_of_lie([basis_monomial(g) for g in self.components])

    def __str__(self) -> str:
        return " | ".join(str(g) for g in self.components)


def partitions(n: int) -> list[tuple[tuple[int, ...], ...]]:
    return [tuple(p) for p in set_partitions(_letters(n))]


def forests_on(partition: Sequence[Sequence[int]]) -> list[Forest]:
    """Forests with the given blocks, in lexicographic order of per-block linear extensions."""
    orders = [linear_extension_on(tuple(b)) for b in partition]
    return [Forest(tuple(combo)) for combo in itertools.product(*orders)]


def enumerate_forests(n: int) -> list[Forest]:
    return [f for part in partitions(n) for f in forests_on(part)]


def poisson_basis(n: int) -> list[Product]:
    return [f.basis_element() for f in enumerate_forests(n)]


# normalization


def _expand(p: Product) -> dict[tuple, int]:
    """Push every product out of the brackets: result maps tuples of bracket monomials to coefficients."""
    acc: dict[tuple, int] = {(): 1}
    for f in p.factors:
        nxt: dict[tuple, int] = {}
        for t1, c1 in acc.items():
            for t2, c2 in _expand_factor(f).items():
                key = t1 + t2
                nxt[key] = nxt.get(key, 0) + c1 * c2
        acc = nxt
    return acc


@lru_cache(maxsize=None)
def _expand_factor_cached(f: Factor) -> tuple:
    if isinstance(f, int):
        return (((f,), 1),)
    out: dict[tuple, int] = {}
    for a, ca in _expand(f.left).items():
        for b, cb in _expand(f.right).items():
            # the bracket is a derivation in each argument
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    key = a[:i] + a[i + 1:] + b[:j] + b[j + 1:] + ((f.color, ai, bj),)
                    out[key] = out.get(key, 0) + ca * cb
    return tuple(out.items())


def _expand_factor(f: Factor) -> dict[tuple, int]:
    return dict(_expand_factor_cached(f))


def poisson_normalize(p: Product) -> LinCombo:
    """Rewrite a monomial in the product basis: Leibniz expansion, then LC on each factor."""
    acc: dict[Product, int] = {}
    for monos, coeff in _expand(p).items():
        parts = [list(lc_normalize(m).items()) for m in monos]
        for choice in itertools.product(*parts):
            c = coeff
            for _, k in choice:
                c *= k
            key = product_of_lie([m for m, _ in choice])
            acc[key] = acc.get(key, 0) + c
    return LinCombo(acc)


def poisson_normalize_combo(combo) -> LinCombo:
    out = LinCombo()
    for k, c in combo.items():
        out = out + poisson_normalize(k) * c
    return out


# the pairing with graphs


@lru_cache(maxsize=4096)
def _com_nadirs(p: Product) -> tuple[dict, int]:
    table: dict = {}
    count = 0

    def walk(prod: Product, path: tuple):
        nonlocal count
        for i, f in enumerate(prod.factors):
            if isinstance(f, int):
                continue
            here = path + (i,)
            count += 1
            for a in poisson_letters(f.left):
                for b in poisson_letters(f.right):
                    table[(a, b)] = (here, False, f.color)
                    table[(b, a)] = (here, True, f.color)
            walk(f.left, here + ("L",))
            walk(f.right, here + ("R",))

    walk(p, ())
    return table, count


def pair_com(g: OrientedGraph, p: Product) -> int:
    """Edges must land bijectively and color-preservingly on the brackets; sign from counterclockwise edges."""
    table, brackets = _com_nadirs(p)
    if len(g.edges) != brackets:
        return 0
    seen = set()
    ccw = 0
    for s, d, c in g.edges:
        entry = table.get((s, d))
        if entry is None:
            return 0
        node, flag, color = entry
        if color != c or node in seen:
            return 0
        seen.add(node)
        ccw += flag
    return -1 if ccw % 2 else 1


def pair_com_combo(beta, alpha) -> int:
    b_items = beta.items() if hasattr(beta, "items") else [(beta, 1)]
    a_items = list(alpha.items()) if hasattr(alpha, "items") else [(alpha, 1)]
    return sum(cb * ca * pair_com(g, t) for g, cb in b_items for t, ca in a_items)


# enumeration of quasi-binary trees


def _ordered_splits(letters: tuple) -> Iterator[tuple[tuple, tuple]]:
    rest = letters[1:]
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            left = (letters[0],) + combo
            right = tuple(x for x in rest if x not in combo)
            if right:
                yield left, right
                yield right, left


@lru_cache(maxsize=None)
def _factors_on(letters: tuple) -> tuple:
    if len(letters) == 1:
        return (letters[0],)
    out = []
    for left, right in _ordered_splits(letters):
        for a in _products_on(left):
            for b in _products_on(right):
                out.append(Bracket(RED, a, b))
                out.append(Bracket(BLUE, a, b))
    return tuple(out)


@lru_cache(maxsize=None)
def _products_on(letters: tuple) -> tuple:
    out = []
    for part in set_partitions(letters):
        for combo in itertools.product(*(_factors_on(tuple(b)) for b in part)):
            out.append(Product.of(combo))
    return tuple(out)


def enumerate_qbt(n: int) -> tuple:
    """Every quasi-binary-tree monomial on x1..xn."""
    return _products_on(_letters(n))


def random_qbt(letters: Sequence[int], rng: random.Random) -> Product:
    pool = list(letters)
    rng.shuffle(pool)
    blocks, cur = [], [pool[0]]
    for x in pool[1:]:
        if rng.random() < 0.4:
            blocks.append(cur)
            cur = [x]
        else:
            cur.append(x)
    blocks.append(cur)
    factors = []
    for b in blocks:
        if len(b) == 1:
            factors.append(b[0])
        else:
            k = rng.randint(1, len(b) - 1)
            factors.append(
                Bracket(rng.choice((RED, BLUE)), random_qbt(b[:k], rng), random_qbt(b[k:], rng))
            )
    return Product.of(factors)


# relation generators


QBT_KINDS = ("S", "J", "MJ", "D1", "D2")


def bracket_sites(p: Product, path: tuple = ()) -> Iterator[tuple]:
    """Addresses of brackets: (factor index, side, factor index, ..., factor index)."""
    for i, f in enumerate(p.factors):
        if isinstance(f, Bracket):
            yield path + (i,)
            yield from bracket_sites(f.left, path + (i, "L"))
            yield from bracket_sites(f.right, path + (i, "R"))


def bracket_at(p: Product, path: tuple) -> Bracket:
    f = p.factors[path[0]]
    if len(path) == 1:
        return f
    return bracket_at(f.left if path[1] == "L" else f.right, path[2:])


def replace_bracket(p: Product, path: tuple, new: list) -> Product:
    """Replace the bracket at ``path`` by the factors ``new`` inside its parent product."""
    fs = list(p.factors)
    i = path[0]
    if len(path) == 1:
        fs[i:i + 1] = new
        return Product.of(fs)
    b = fs[i]
    if path[1] == "L":
        fs[i] = Bracket(b.color, replace_bracket(b.left, path[2:], new), b.right)
    else:
        fs[i] = Bracket(b.color, b.left, replace_bracket(b.right, path[2:], new))
    return Product.of(fs)


def _single(f) -> Product:
    return Product((f,))


def _lie_shape(kind, a, b, c) -> list[tuple[Factor, int]]:
    """A relation among slots that are products, realized as bracket factors."""
    combo = relation_instance(kind, "A", "B", "C") if c is not None else relation_instance(kind, "A", "B")
    slots = {"A": a, "B": b, "C": c}

    def build(t):
        if isinstance(t, str):
            return slots[t]
        col, x, y = t
        return _single(Bracket(col, build(x), build(y)))

    return [(build(t).factors[0], coeff) for t, coeff in combo.items()]


def _relations_at(p: Product, path: tuple, kind: str) -> list[LinCombo]:
    u = bracket_at(p, path)
    a, b = u.left, u.right
    inner = b.factors[0] if len(b.factors) == 1 and isinstance(b.factors[0], Bracket) else None
    out = []
    if kind == "S":
        terms = _lie_shape("S1" if u.color == RED else "S2", a, b, None)
        out.append(terms)
    elif kind == "J" and inner is not None and inner.color == u.color:
        out.append(_lie_shape("J1" if u.color == RED else "J2", a, inner.left, inner.right))
    elif kind == "MJ" and inner is not None and inner.color != u.color:
        out.append(_lie_shape("MJ", a, inner.left, inner.right))
    elif kind in ("D1", "D2") and (u.color == RED) == (kind == "D1") and len(b.factors) > 1:
        fs = b.factors
        # both groups nonempty; the group holding the first factor is B
        for k in range(0, len(fs) - 1):
            for extra in itertools.combinations(range(1, len(fs)), k):
                grp_b = [fs[0]] + [fs[i] for i in extra]
                grp_c = [fs[i] for i in range(1, len(fs)) if i not in extra]
                combo = LinCombo(
                    [
                        (p, 1),
                        (replace_bracket(p, path, [Bracket(u.color, a, Product.of(grp_b))] + grp_c), -1),
                        (replace_bracket(p, path, [Bracket(u.color, a, Product.of(grp_c))] + grp_b), -1),
                    ]
                )
                out.append(combo)
        return [c for c in out if c]
    else:
        return []
    return [c for c in (LinCombo((replace_bracket(p, path, [f]), k) for f, k in terms) for terms in out) if c]


def qbt_relation_generators(n: int, kind: str, samples: int | None = None, seed: int = 0) -> Iterator[LinCombo]:
    """Generators of the Poisson relation module; exhaustive when ``samples`` is None."""
    if kind not in QBT_KINDS:
        raise ValueError(f"unknown relation kind {kind!r}")
    if samples is None:
        seen = set()
        for p in enumerate_qbt(n):
            for path in bracket_sites(p):
                for combo in _relations_at(p, path, kind):
                    key = frozenset(combo.items())
                    if key not in seen:
                        seen.add(key)
                        yield combo
        return
    rng = random.Random(seed)
    count, misses = 0, 0
    while count < samples and misses < 100 * samples + 1000:
        p = random_qbt(range(1, n + 1), rng)
        sites = list(bracket_sites(p))
        rng.shuffle(sites)
        found = None
        for path in sites:
            options = _relations_at(p, path, kind)
            if options:
                found = rng.choice(options)
                break
        if found is None:
            misses += 1
            continue
        yield found
        count += 1


# the pairing matrix against forests


@dataclass
class ComReport:
    n: int
    rows: list  # Forest per row
    cols: list  # Forest per column (its basis product)
    entries: np.ndarray
    checked: list = field(default_factory=list)  # partitions examined
    cross_violations: list = field(default_factory=list)
    kron_failures: list = field(default_factory=list)
    singular_blocks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.cross_violations or self.kron_failures or self.singular_blocks)

    def block_sizes(self) -> dict:
        sizes: dict = {}
        for f in self.rows:
            sizes[f.partition] = sizes.get(f.partition, 0) + 1
        return sizes


def com_matrix(n: int, only: Sequence | None = None) -> ComReport:
    """Pairing of forest rows against product-basis columns, with block checks.

    With ``only`` given, rows are restricted to those partitions (columns stay
    complete, so cross-partition zeros are still checked in full).
    """
    forests = enumerate_forests(n)
    cols = forests
    parts = partitions(n) if only is None else [tuple(tuple(b) for b in p) for p in only]
    rows = [f for f in forests if f.partition in set(parts)]
    col_elems = [f.basis_element() for f in cols]
    entries = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, f in enumerate(rows):
        g = f.oriented()
        for j, b in enumerate(col_elems):
            entries[i, j] = pair_com(g, b)
    report = ComReport(n, rows, cols, entries, checked=list(parts))
    for i, f in enumerate(rows):
        for j, h in enumerate(cols):
            if f.partition != h.partition and entries[i, j]:
                report.cross_violations.append((str(f), str(h)))
    for part in parts:
        ri = [i for i, f in enumerate(rows) if f.partition == part]
        ci = [j for j, f in enumerate(cols) if f.partition == part]
        block = entries[np.ix_(ri, ci)]
        expected = np.ones((1, 1), dtype=np.int64)
        for b in part:
            trees = linear_extension_on(tuple(b))
            expected = np.kron(expected, matrix_against(trees, [basis_monomial(t) for t in trees]))
        if not np.array_equal(block, expected):
            report.kron_failures.append(part)
        if round(abs(np.linalg.det(block.astype(float)))) == 0:
            report.singular_blocks.append(part)
    return report


# counting


@dataclass(frozen=True)
class ExpFormulaReport:
    rows: tuple  # (n, convolution value, (n+1)^(n-1))

    @property
    def ok(self) -> bool:
        return all(a == b for _, a, b in self.rows)


def exp_formula_check(max_n: int) -> ExpFormulaReport:
    """p(n) = sum_k C(n-1, k-1) k^(k-1) p(n-k) against (n+1)^(n-1).

    The recurrence fixes the block holding x_n, of size k, and is the
    coefficient form of P(x) = exp(L(x)) with L counting rooted trees.
    """
    p = [1]
    rows = []
    for n in range(1, max_n + 1):
        p.append(sum(math.comb(n - 1, k - 1) * k ** (k - 1) * p[n - k] for k in range(1, n + 1)))
        rows.append((n, p[n], (n + 1) ** (n - 1)))
    return ExpFormulaReport(tuple(rows))
