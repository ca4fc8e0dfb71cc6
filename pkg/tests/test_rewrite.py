import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liebra.combinatorics import enumerate_colored_trees, oriented_copy
from liebra.lincombo import LinCombo
from liebra.monomials import basis_monomial, blue, enumerate_monomials, is_basis_monomial, random_monomial, red
from liebra.rewrite import (
    RELATION_KINDS,
    generate_relations,
    lc_normalize,
    lc_normalize_combo,
    relation_audit,
    relation_instance,
)
from oracles import naive_pair


def test_antisymmetry():
    assert lc_normalize(red(2, 1)) == {red(1, 2): -1}
    # root x2 with blue child x1 gives <x1,x2>
    assert lc_normalize(blue(2, 1)) == {blue(1, 2): -1}


def test_basis_monomials_are_fixed():
    for n in range(1, 5):
        for g in enumerate_colored_trees(n):
            b = basis_monomial(g)
            assert lc_normalize(b) == {b: 1}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lc_against_naive_pairing(n):
    # the pairing is perfect, so agreement against every tree pins the coefficients
    trees = [oriented_copy(g) for g in enumerate_colored_trees(n)]
    monos = list(enumerate_monomials(n))
    if n == 4:
        monos = random.Random(1).sample(monos, 150)
    for m in monos:
        out = lc_normalize(m)
        assert all(is_basis_monomial(k) for k in out)
        for o in trees:
            assert naive_pair(o, m) == sum(c * naive_pair(o, k) for k, c in out.items())


def test_relation_instances_have_expected_size():
    assert len(relation_instance("S1", 1, 2)) == 2
    assert len(relation_instance("J2", 1, 2, 3)) == 3
    assert len(relation_instance("MJ", 1, 2, 3)) == 6
    with pytest.raises(ValueError):
        relation_instance("X", 1, 2)


@pytest.mark.parametrize("kind", RELATION_KINDS)
@pytest.mark.parametrize("n", [3, 4, 5])
def test_relations_vanish(kind, n):
    rels = list(generate_relations(n, kind, 100, seed=n))
    assert len(rels) == 100
    for r in rels:
        assert relation_audit(r), str(r)


def test_generate_relations_infeasible_is_empty():
    assert list(generate_relations(2, "J1", 10)) == []


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.integers(0, 2**32 - 1), st.integers(-3, 3))
def test_normalization_is_linear(n, seed, k):
    rng = random.Random(seed)
    a, b = random_monomial(range(1, n + 1), rng), random_monomial(range(1, n + 1), rng)
    combo = LinCombo({a: k}) + LinCombo({b: 2})
    assert lc_normalize_combo(combo) == lc_normalize(a) * k + lc_normalize(b) * 2


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_normalization_is_idempotent(n, seed):
    m = random_monomial(range(1, n + 1), random.Random(seed))
    out = lc_normalize(m)
    assert lc_normalize_combo(out) == out
