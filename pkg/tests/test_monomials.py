import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liebra.combinatorics import BLUE, RED, ColoredGraph, enumerate_colored_trees
from liebra.errors import MonomialSyntaxError, MultilinearityError
from liebra.monomials import (
    basis_monomial,
    basis_violation,
    blue,
    enumerate_monomials,
    from_json,
    graphical_root,
    is_basis_monomial,
    letters,
    monomial_count,
    parse_monomial,
    print_monomial,
    random_monomial,
    red,
    to_json,
    tree_of_monomial,
)
from oracles import monomial_count_formula


@pytest.mark.parametrize("n", range(1, 6))
def test_monomial_count(n):
    assert monomial_count(n) == monomial_count_formula(n)
    if n <= 4:
        assert sum(1 for _ in enumerate_monomials(n)) == monomial_count_formula(n)
    assert monomial_count_formula(4) == 960


def test_parse_and_print():
    m = parse_monomial("<[x2,x3],x1>")
    assert m == blue(red(2, 3), 1)
    assert print_monomial(m) == "<[x2,x3],x1>"
    assert parse_monomial(" [ x1 , < x2 , x3 > ] ") == red(1, blue(2, 3))


@pytest.mark.parametrize(
    "text,exc",
    [("[x1,x2", MonomialSyntaxError), ("[x1;x2]", MonomialSyntaxError), ("[x1,x1]", MultilinearityError), ("", MonomialSyntaxError)],
)
def test_parse_errors(text, exc):
    with pytest.raises(exc):
        parse_monomial(text)


def test_parse_requires_full_alphabet():
    with pytest.raises(MultilinearityError):
        parse_monomial("[x1,x3]", n=3)


def test_syntax_error_offset():
    with pytest.raises(MonomialSyntaxError, match="offset"):
        parse_monomial("[x1,x2]]")


def test_graphical_root():
    # min over red brackets, max over blue ones
    assert graphical_root(red(3, 2)) == 2
    assert graphical_root(blue(3, 2)) == 3
    assert graphical_root(blue(red(1, 4), red(2, 3))) == 2


def test_basis_monomial_hand_examples():
    # root x1 with red children x2, x3: split off the smallest red child
    g = ColoredGraph.on(3, [(1, 2, RED), (1, 3, RED)])
    assert basis_monomial(g) == red(red(1, 3), 2)
    # root x3 with blue children x1, x2: split off the largest child into the left slot
    g = ColoredGraph.on(3, [(1, 3, BLUE), (2, 3, BLUE)])
    assert basis_monomial(g) == blue(2, blue(1, 3))
    # a blue path 3 -> 2 -> 1
    g = ColoredGraph.on(3, [(1, 2, BLUE), (2, 3, BLUE)])
    assert basis_monomial(g) == blue(blue(1, 2), 3)


@pytest.mark.parametrize("n", range(1, 5))
def test_basis_criteria_characterize_image(n):
    image = {basis_monomial(g) for g in enumerate_colored_trees(n)}
    assert len(image) == n ** (n - 1)
    for m in enumerate_monomials(n):
        assert is_basis_monomial(m) == (m in image)
        assert (basis_violation(m) is None) == (m in image)


@pytest.mark.parametrize("n", range(1, 6))
def test_tree_of_basis_monomial(n):
    for g in enumerate_colored_trees(n):
        assert tree_of_monomial(basis_monomial(g)) == g


def test_random_monomial_is_multilinear():
    rng = random.Random(3)
    for _ in range(50):
        m = random_monomial(range(1, 8), rng)
        assert sorted(letters(m)) == list(range(1, 8))


@st.composite
def monomials(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_monomial(range(1, n + 1), random.Random(seed))


@settings(max_examples=200, deadline=None)
@given(monomials())
def test_print_parse_round_trip(m):
    assert parse_monomial(print_monomial(m)) == m
    assert from_json(to_json(m)) == m
