import itertools

import pytest

from liebra.combinatorics import BLUE, RED, ColoredGraph, enumerate_colored_trees, oriented_copy
from liebra.errors import DomainError
from liebra.monomials import basis_monomial
from liebra.orders import (
    Verdict,
    index_vector,
    ind_compare,
    leq_ind,
    linear_extension,
    op_moves,
    op_reachability,
    operated_from,
    rlex_less,
    to_dot,
)
from liebra.pairing import pairing_support


def test_index_vector():
    # root x2, red child x3, blue child x1
    g = ColoredGraph.on(3, [(2, 3, RED), (1, 2, BLUE)])
    assert index_vector(g) == (-1, 0, 1)


def test_rlex_compares_from_the_right():
    assert rlex_less((1, 0, -1), (-1, 0, 0))
    assert not rlex_less((0, 0), (0, 0))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_partial_order_axioms(n):
    trees = enumerate_colored_trees(n)
    for g in trees:
        assert leq_ind(g, g)
    for g, h in itertools.permutations(trees, 2):
        assert not (leq_ind(g, h) and leq_ind(h, g))
    if n <= 3:
        for a, b, c in itertools.permutations(trees, 3):
            if leq_ind(a, b) and leq_ind(b, c):
                assert leq_ind(a, c)


def test_compare_verdicts():
    trees = enumerate_colored_trees(3)
    assert ind_compare(trees[0], trees[0]) is Verdict.EQUAL
    verdicts = {ind_compare(g, h) for g in trees for h in trees}
    assert Verdict.LESS in verdicts and Verdict.GREATER in verdicts


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_linear_extension_respects_order(n):
    order = linear_extension(n)
    assert len(order) == n ** (n - 1) and len(set(order)) == len(order)
    if n <= 4:
        pos = {g: i for i, g in enumerate(order)}
        for g, h in itertools.permutations(order, 2):
            if leq_ind(g, h):
                assert pos[g] < pos[h]


@pytest.mark.parametrize("n", [3, 4])
def test_op_moves_go_up_in_ind(n):
    for g in enumerate_colored_trees(n):
        for h in op_moves(g):
            assert ind_compare(g, h) is Verdict.LESS


def test_nonzero_pairing_implies_op_reachable():
    # <o_G, b_H> != 0 only when H is reached from G by moves
    reach = op_reachability(4)
    cols = {basis_monomial(h): h for h in enumerate_colored_trees(4)}
    for g in enumerate_colored_trees(4):
        for m in pairing_support(oriented_copy(g)):
            if m in cols:
                h = cols[m]
                assert h == g or h in reach[g]


def test_operated_from_root_is_error():
    g = ColoredGraph.on(2, [(1, 2, RED)])
    with pytest.raises(DomainError):
        operated_from(g, 1)


def test_dot_output():
    dot = to_dot(3)
    assert dot.startswith("digraph") and dot.count("label=") == 9
