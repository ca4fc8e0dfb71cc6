"""Multilinear bracket monomials as leaf-labeled plane binary trees.

A monomial is either a letter (``int``) or a triple ``(color, left, right)``;
red nodes are ``[.,.]`` and blue nodes ``<.,.>``.  Plain tuples keep
monomials hashable, cheap to build and structurally comparable, so the tuple
itself doubles as the canonical key in linear combinations.
"""

from __future__ import annotations

import itertools
import math
import random
from functools import lru_cache
from typing import Iterator, Sequence, Union

from .combinatorics import BLUE, RED, Color, ColoredGraph, rooted_view
from .errors import MonomialSyntaxError, MultilinearityError

Monomial = Union[int, tuple]

CRITERIA = {
    "b": "gr(m1) < gr(m2) and both factors are basis monomials",
    "c": "[[m1,m3],m2] requires gr(m2) < gr(m3)",
    "d": "<m1,m2> requires m2 to be a letter or a <.,.> bracket",
    "e": "<m2,<m1,m3>> requires gr(m1) < gr(m2)",
}


def bracket(color, left: Monomial, right: Monomial) -> tuple:
    return (Color(color), left, right)


def red(left: Monomial, right: Monomial) -> tuple:
    return (RED, left, right)


def blue(left: Monomial, right: Monomial) -> tuple:
    return (BLUE, left, right)


def is_leaf(m: Monomial) -> bool:
    return isinstance(m, int)


@lru_cache(maxsize=None)
def letters(m: Monomial) -> tuple[int, ...]:
    if is_leaf(m):
        return (m,)
    return tuple(sorted(letters(m[1]) + letters(m[2])))


@lru_cache(maxsize=None)
def graphical_root(m: Monomial) -> int:
    if is_leaf(m):
        return m
    c, a, b = m
    ga, gb = graphical_root(a), graphical_root(b)
    return min(ga, gb) if c == RED else max(ga, gb)


def print_monomial(m: Monomial) -> str:
    if is_leaf(m):
        return f"x{m}"
    c, a, b = m
    open_, close = ("[", "]") if c == RED else ("<", ">")
    return f"{open_}{print_monomial(a)},{print_monomial(b)}{close}"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise MonomialSyntaxError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def letter(self) -> int:
        self.expect("x")
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise MonomialSyntaxError("expected letter index", start)
        index = int(self.text[start:self.pos])
        if index < 1:
            raise MonomialSyntaxError("letter index must be positive", start)
        return index


class _MonomialParser(_Parser):
    def expr(self) -> Monomial:
        ch = self.peek()
        if ch == "x":
            return self.letter()
        if ch and ch in "[<":
            close = "]" if ch == "[" else ">"
            self.pos += 1
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(close)
            return (RED if ch == "[" else BLUE, left, right)
        raise MonomialSyntaxError(f"unexpected {ch or 'end of input'!r}", self.pos)


def check_multilinear(found: Sequence[int], n: int | None):
    seen = set()
    for x in found:
        if x in seen:
            raise MultilinearityError(f"letter x{x} appears more than once", x)
        seen.add(x)
    if n is not None:
        for x in sorted(seen):
            if x > n:
                raise MultilinearityError(f"letter x{x} outside alphabet x1..x{n}", x)
        for x in range(1, n + 1):
            if x not in seen:
                raise MultilinearityError(f"letter x{x} is missing", x)


def _leaf_letters(m: Monomial) -> list[int]:
    if is_leaf(m):
        return [m]
    return _leaf_letters(m[1]) + _leaf_letters(m[2])


def parse_monomial(text: str, n: int | None = None) -> Monomial:
    """Parse ``[a,b]`` / ``<a,b>`` / ``x7`` notation.

    With ``n`` given the monomial must use each of x1..xn exactly once;
    otherwise only repeated letters are rejected.
    """
    p = _MonomialParser(text)
    m = p.expr()
    p.skip()
    if p.pos != len(text):
        raise MonomialSyntaxError("trailing input", p.pos)
    check_multilinear(_leaf_letters(m), n)
    return m


def to_json(m: Monomial):
    if is_leaf(m):
        return f"x{m}"
    c, a, b = m
    return {"c": c.char, "l": to_json(a), "r": to_json(b)}


def from_json(obj) -> Monomial:
    if isinstance(obj, str):
        return int(obj.lstrip("x"))
    if isinstance(obj, int):
        return obj
    return (Color.parse(obj["c"]), from_json(obj["l"]), from_json(obj["r"]))


def tree_of_monomial(m: Monomial) -> ColoredGraph:
    """The two-colored graph of ``m``: each bracket joins the graphical roots of its factors."""
    edges = []

    def walk(t):
        if is_leaf(t):
            return
        c, a, b = t
        edges.append((graphical_root(a), graphical_root(b), c))
        walk(a)
        walk(b)

    walk(m)
    return ColoredGraph.make(letters(m), edges)


@lru_cache(maxsize=None)
def basis_monomial(g: ColoredGraph) -> Monomial:
    """The basis monomial b_G of a pattern-avoiding tree."""
    root, _, children = rooted_view(g)

    def build(r: int, kids: tuple[int, ...]) -> Monomial:
        if not kids:
            return r
        larger = [c for c in kids if c > r]
        if larger:
            c = larger[0]
            rest = tuple(k for k in kids if k != c)
            return (RED, build(r, rest), build(c, children[c]))
        c = kids[-1]
        return (BLUE, build(c, children[c]), build(r, kids[:-1]))

    return build(root, children[root])


@lru_cache(maxsize=None)
def basis_violation(m: Monomial) -> str | None:
    """First criterion of the basis characterization that ``m`` fails, or None."""
    if is_leaf(m):
        return None
    c, m1, m2 = m
    if graphical_root(m1) > graphical_root(m2):
        return "b"
    if basis_violation(m1) or basis_violation(m2):
        return "b"
    if c == RED:
        if not is_leaf(m1) and m1[0] == RED and not graphical_root(m2) < graphical_root(m1[2]):
            return "c"
    else:
        if not is_leaf(m2) and m2[0] == RED:
            return "d"
        if not is_leaf(m2) and not graphical_root(m2[1]) < graphical_root(m1):
            return "e"
    return None


def is_basis_monomial(m: Monomial) -> bool:
    return basis_violation(m) is None


@lru_cache(maxsize=None)
def _monomials_on(letters_: tuple[int, ...]) -> tuple[Monomial, ...]:
    if len(letters_) == 1:
        return (letters_[0],)
    out = []
    rest = letters_[1:]
    # ordered splits (A, B); the first letter goes left or right
    for k in range(len(rest) + 1):
        for combo in itertools.combinations(rest, k):
            left = (letters_[0],) + combo
            right = tuple(x for x in rest if x not in combo)
            if not right:
                continue
            for a_set, b_set in ((left, right), (right, left)):
                for a in _monomials_on(a_set):
                    for b in _monomials_on(b_set):
                        out.append((RED, a, b))
                        out.append((BLUE, a, b))
    return tuple(out)


def monomials_on(letters_: Sequence[int]) -> tuple[Monomial, ...]:
    return _monomials_on(tuple(sorted(letters_)))


def enumerate_monomials(n: int) -> Iterator[Monomial]:
    yield from monomials_on(range(1, n + 1))


def monomial_count(n: int) -> int:
    """Catalan(n-1) * n! * 2^(n-1)."""
    return math.comb(2 * n - 2, n - 1) // n * math.factorial(n) * 2 ** (n - 1)


def random_monomial(letters_: Sequence[int], rng: random.Random) -> Monomial:
    pool = list(letters_)
    rng.shuffle(pool)

    def build(xs):
        if len(xs) == 1:
            return xs[0]
        k = rng.randint(1, len(xs) - 1)
        return (rng.choice((RED, BLUE)), build(xs[:k]), build(xs[k:]))

    return build(pool)


def internal_paths(m: Monomial, prefix: str = "") -> Iterator[str]:
    """Addresses of internal nodes as L/R strings from the root (root is "")."""
    if is_leaf(m):
        return
    yield prefix
    yield from internal_paths(m[1], prefix + "L")
    yield from internal_paths(m[2], prefix + "R")


def subtree_at(m: Monomial, path: str) -> Monomial:
    for step in path:
        m = m[1] if step == "L" else m[2]
    return m


def replace_at(m: Monomial, path: str, new: Monomial) -> Monomial:
    if not path:
        return new
    c, a, b = m
    if path[0] == "L":
        return (c, replace_at(a, path[1:], new), b)
    return (c, a, replace_at(b, path[1:], new))


def substitute(m: Monomial, letter: int, new: Monomial) -> Monomial:
    """Replace the leaf ``letter`` by ``new``."""
    if is_leaf(m):
        return new if m == letter else m
    c, a, b = m
    return (c, substitute(a, letter, new), substitute(b, letter, new))
