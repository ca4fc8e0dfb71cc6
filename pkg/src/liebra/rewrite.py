"""Normalization of monomials onto the basis B_n(X), and the relation audit.

``lc_normalize`` follows the four-step recursion exactly in the printed
order: membership, normalize children, swap, then the Jacobi-type rewrite.
Results are memoized on the monomial itself.
"""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

from .combinatorics import BLUE, RED, colored_trees_on
from .errors import InternalInvariantError
from .lincombo import LinCombo, linear_extend
from .monomials import (
    Monomial,
    basis_monomial,
    graphical_root,
    is_basis_monomial,
    is_leaf,
    print_monomial,
    random_monomial,
    substitute,
)

MAX_DEPTH = 2000
RELATION_KINDS = ("S1", "S2", "J1", "J2", "MJ")
ARITY = {"S1": 2, "S2": 2, "J1": 3, "J2": 3, "MJ": 3}

_guard = threading.local()


def lc_normalize(m: Monomial) -> LinCombo:
    """Express ``m`` as an integer combination of basis monomials."""
    return LinCombo(_lc(m))


def lc_normalize_combo(combo) -> LinCombo:
    return linear_extend(lc_normalize, combo)


def _combine(acc: dict, terms, scale: int):
    for k, v in terms:
        acc[k] = acc.get(k, 0) + scale * v


@lru_cache(maxsize=None)
def _lc(m: Monomial) -> tuple:
    depth = getattr(_guard, "depth", 0)
    if depth > MAX_DEPTH:
        raise InternalInvariantError(f"normalization depth exceeded at {print_monomial(m)}")
    _guard.depth = depth + 1
    try:
        return _lc_step(m)
    finally:
        _guard.depth = depth


def _lc_step(m: Monomial) -> tuple:
    # (1) already a basis monomial
    if is_basis_monomial(m):
        return ((m, 1),)
    c, m1, m2 = m
    acc: dict = {}
    # (2) normalize the factors first
    if not (is_basis_monomial(m1) and is_basis_monomial(m2)):
        for b1, a1 in _lc(m1):
            for b2, a2 in _lc(m2):
                _combine(acc, _lc((c, b1, b2)), a1 * a2)
        return tuple((k, v) for k, v in acc.items() if v)
    g1, g2 = graphical_root(m1), graphical_root(m2)
    if g1 == g2:
        raise InternalInvariantError(f"equal graphical roots in {print_monomial(m)}")
    # (3) antisymmetry
    if g1 > g2:
        return tuple((k, -v) for k, v in _lc((c, m2, m1)))
    # (4) Jacobi-type rewrites
    if c == RED:
        if is_leaf(m1) or m1[0] != RED:
            raise InternalInvariantError(f"unexpected shape {print_monomial(m)}")
        _, a, b = m1
        terms = [(1, (RED, (RED, a, m2), b)), (1, (RED, a, (RED, b, m2)))]
    elif not is_leaf(m2) and m2[0] == RED:
        _, p, q = m2
        terms = [
            (-1, (BLUE, (RED, m1, q), p)),
            (1, (BLUE, (RED, m1, p), q)),
            (-1, (RED, m1, (BLUE, p, q))),
            (1, (RED, p, (BLUE, m1, q))),
            (1, (RED, (BLUE, m1, p), q)),
        ]
    elif not is_leaf(m2):
        _, p, q = m2
        terms = [(1, (BLUE, p, (BLUE, m1, q))), (1, (BLUE, (BLUE, m1, p), q))]
    else:
        raise InternalInvariantError(f"unexpected shape {print_monomial(m)}")
    for sign, t in terms:
        _combine(acc, _lc(t), sign)
    return tuple((k, v) for k, v in acc.items() if v)


def relation_instance(kind: str, a: Monomial, b: Monomial, c: Monomial | None = None) -> LinCombo:
    """The defining identity of ``kind`` with slots filled by ``a, b, c``."""
    if kind in ("S1", "S2"):
        col = RED if kind == "S1" else BLUE
        return LinCombo([((col, a, b), 1), ((col, b, a), 1)])
    rot = [(a, b, c), (b, c, a), (c, a, b)]
    if kind in ("J1", "J2"):
        col = RED if kind == "J1" else BLUE
        return LinCombo(((col, x, (col, y, z)), 1) for x, y, z in rot)
    if kind == "MJ":
        terms = [((RED, x, (BLUE, y, z)), 1) for x, y, z in rot]
        terms += [((BLUE, x, (RED, y, z)), 1) for x, y, z in rot]
        return LinCombo(terms)
    raise ValueError(f"unknown relation kind {kind!r}")


@dataclass(frozen=True)
class RelationElement:
    kind: str
    combo: LinCombo
    context: str

    def __str__(self) -> str:
        return f"{self.kind} in {self.context}: {self.combo.to_text()}"


HOLE = 0


def _random_split(xs: list, parts: int, rng: random.Random) -> list[list]:
    cuts = sorted(rng.sample(range(1, len(xs)), parts - 1))
    bounds = [0] + cuts + [len(xs)]
    return [xs[bounds[i]:bounds[i + 1]] for i in range(parts)]


def random_relation(n: int, kind: str, rng: random.Random) -> RelationElement:
    """One relation of ``kind`` on x1..xn inside a random enclosing context."""
    arity = ARITY[kind]
    pool = list(range(1, n + 1))
    rng.shuffle(pool)
    size = rng.randint(arity, n)
    slot_letters, rest = pool[:size], pool[size:]
    slots = [random_monomial(part, rng) for part in _random_split(slot_letters, arity, rng)]
    identity = relation_instance(kind, *slots)
    context = HOLE
    if rest:
        # a random basis monomial on the remaining letters plus the hole
        context = basis_monomial(rng.choice(colored_trees_on(tuple(sorted(rest + [HOLE])))))
    combo = identity.map_keys(lambda t: substitute(context, HOLE, t))
    text = print_monomial(context).replace("x0", "_")
    return RelationElement(kind, combo, text)


def generate_relations(n: int, kind: str, samples: int, seed: int = 0) -> Iterator[RelationElement]:
    """Deterministic stream of ``samples`` relation elements; empty when infeasible."""
    if kind not in ARITY:
        raise ValueError(f"unknown relation kind {kind!r}")
    if n < ARITY[kind]:
        return
    rng = random.Random(seed)
    for _ in range(samples):
        yield random_relation(n, kind, rng)


def relation_audit(r: RelationElement) -> bool:
    """True iff the relation normalizes to the empty combination."""
    return not lc_normalize_combo(r.combo)
