import itertools
import random

import pytest

from liebra.combinatorics import BLUE, RED, OrientedGraph, enumerate_colored_trees
from liebra.eil import eil_basis, eil_normalize, eil_normalize_combo, graph_on, is_oriented_tree
from liebra.monomials import basis_monomial
from oracles import naive_pair


def _oracle_holds(g, out, n):
    basis = [basis_monomial(t) for t in enumerate_colored_trees(n)]
    return all(naive_pair(g, b) == sum(c * naive_pair(k, b) for k, c in out.items()) for b in basis)


def test_reversal_gives_sign():
    assert eil_normalize(graph_on(2, [(2, 1, RED)])) == {graph_on(2, [(1, 2, RED)]): -1}
    assert eil_normalize(graph_on(2, [(1, 2, BLUE)])) == {graph_on(2, [(2, 1, BLUE)]): -1}


@pytest.mark.parametrize(
    "edges",
    [
        [(1, 2, RED), (2, 3, RED), (3, 1, BLUE)],  # cycle
        [(1, 2, RED), (2, 1, BLUE)],  # doubled edge
        [(1, 2, RED)],  # disconnected on three letters
    ],
)
def test_non_trees_vanish(edges):
    g = graph_on(3, edges)
    assert not is_oriented_tree(g)
    assert eil_normalize(g) == {}


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_is_fixed(n):
    for o in eil_basis(n):
        assert eil_normalize(o) == {o: 1}


def test_glued_pair_of_red_edges():
    g = graph_on(3, [(1, 3, RED), (2, 3, RED)])
    out = eil_normalize(g)
    assert set(out) <= set(eil_basis(3))
    assert _oracle_holds(g, out, 3)


@pytest.mark.parametrize("n", [3, 4])
def test_every_oriented_tree_exhaustively(n):
    letters = range(1, n + 1)
    pairs = list(itertools.combinations(letters, 2))
    basis = set(eil_basis(n))
    count = 0
    for chosen in itertools.combinations(pairs, n - 1):
        for dirs in itertools.product((0, 1), repeat=n - 1):
            for cols in itertools.product((RED, BLUE), repeat=n - 1):
                edges = [((u, v) if d == 0 else (v, u)) + (c,) for (u, v), d, c in zip(chosen, dirs, cols)]
                g = OrientedGraph.on(n, edges)
                if not is_oriented_tree(g):
                    assert eil_normalize(g) == {}
                    continue
                if n == 4 and random.Random(hash(g.edges)).random() > 0.1:
                    continue
                out = eil_normalize(g)
                assert set(out) <= basis
                assert _oracle_holds(g, out, n)
                count += 1
    assert count > 0


def test_normalize_combo_is_linear():
    a = graph_on(3, [(3, 1, RED), (2, 1, BLUE)])
    b = graph_on(3, [(1, 2, RED), (2, 3, RED)])
    assert eil_normalize_combo({a: 2, b: -1}) == eil_normalize(a) * 2 - eil_normalize(b)
