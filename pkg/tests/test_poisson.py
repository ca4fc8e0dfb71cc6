import random

import pytest

from liebra.combinatorics import BLUE, RED, OrientedGraph, enumerate_colored_trees, oriented_copy
from liebra.errors import MonomialSyntaxError, MultilinearityError
from liebra.poisson import (
    QBT_KINDS,
    Bracket,
    Product,
    com_matrix,
    enumerate_forests,
    enumerate_qbt,
    exp_formula_check,
    pair_com,
    pair_com_combo,
    parse_poisson,
    poisson_basis,
    poisson_normalize,
    poisson_normalize_combo,
    print_poisson,
    qbt_relation_generators,
    random_qbt,
)


@pytest.mark.parametrize("n", range(1, 6))
def test_basis_size(n):
    assert len(poisson_basis(n)) == (n + 1) ** (n - 1)
    assert len(set(poisson_basis(n))) == (n + 1) ** (n - 1)


def test_exp_formula():
    rep = exp_formula_check(8)
    assert rep.ok and rep.rows[-1] == (8, 9**7, 9**7)


def test_parse_print():
    p = parse_poisson("x1*[x2*x3*x4,<x5,x6*x7>]")
    assert print_poisson(p) == "x1*[x2*x3*x4,<x5,x6*x7>]"
    assert parse_poisson("x3 x1 x2") == parse_poisson("x1*x2*x3")
    with pytest.raises(MultilinearityError):
        parse_poisson("x1*x1")
    with pytest.raises(MonomialSyntaxError):
        parse_poisson("[x1,x2")


def test_leibniz_rule():
    out = poisson_normalize(parse_poisson("[x1,x2*x3]"))
    assert out == {parse_poisson("[x1,x2]*x3"): 1, parse_poisson("[x1,x3]*x2"): 1}


def test_product_pairing_example_with_forest():
    # red x3 -> x6 and blue x5 -> x7 meet the two brackets of this seven-letter tree
    t = parse_poisson("x1*[x2*x3*x4,<x5,x6*x7>]")
    g = OrientedGraph.on(7, [(3, 6, RED), (5, 7, BLUE)])
    assert pair_com(g, t) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_normalization_preserves_pairing(n):
    forests = [f.oriented() for f in enumerate_forests(n)]
    for t in enumerate_qbt(n):
        out = poisson_normalize(t)
        assert set(out) <= set(poisson_basis(n))
        for g in forests:
            assert pair_com(g, t) == pair_com_combo(g, out)


def test_enumerate_qbt_counts():
    assert [len(enumerate_qbt(n)) for n in (1, 2, 3)] == [1, 5, 73]


@pytest.mark.parametrize("kind", QBT_KINDS)
def test_relations_normalize_to_zero(kind):
    gens = list(qbt_relation_generators(3, kind))
    assert gens
    for combo in gens:
        assert poisson_normalize_combo(combo) == {}


def test_com_matrix_blocks():
    rep = com_matrix(3)
    assert rep.ok
    assert sorted(rep.block_sizes().values()) == [1, 2, 2, 2, 9]
    assert com_matrix(4, only=[((1, 2), (3, 4)), ((1, 2, 3, 4),)]).ok


def test_random_qbt_letters():
    rng = random.Random(0)
    for _ in range(20):
        p = random_qbt(range(1, 6), rng)
        assert parse_poisson(print_poisson(p), n=5) == p
