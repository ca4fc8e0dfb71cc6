import math

import pytest

from liebra.combinatorics import (
    BLUE,
    RED,
    Color,
    ColoredGraph,
    OrientedGraph,
    color_map,
    colored_trees_on,
    count_by_increasing_edges,
    enumerate_colored_trees,
    enumerate_rooted_trees,
    format_edges,
    increasing_edge_polynomial,
    inverse_color_map,
    is_consistent,
    is_pattern_avoiding_tree,
    oriented_copy,
    pattern_violations,
    prufer_decode,
    root_of,
    set_partitions,
    unoriented_copy,
)
from liebra.errors import DomainError, EmptyAlphabetError, PatternViolationError
from oracles import naive_color, naive_has_pattern, naive_increasing_counts, naive_rooted_trees


@pytest.mark.parametrize("n", range(1, 6))
def test_tree_count_is_cayley(n):
    assert len(enumerate_colored_trees(n)) == n ** (n - 1)
    assert len(enumerate_rooted_trees(n)) == n ** (n - 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_color_map_image_matches_naive_enumeration(n):
    naive = {naive_color(n, par) for _, par in naive_rooted_trees(n)}
    assert naive == set(enumerate_colored_trees(n))


@pytest.mark.parametrize("n", range(2, 5))
def test_pattern_avoiding_trees_are_exactly_the_colored_rooted_trees(n):
    # every 2-coloring of every labeled tree, filtered by a brute-force pattern check
    import itertools

    found = set()
    for _, par in naive_rooted_trees(n):
        if min(par, default=None) is None:
            continue
        pairs = sorted({(min(v, p), max(v, p)) for v, p in par.items()})
        for colors in itertools.product((RED, BLUE), repeat=len(pairs)):
            g = ColoredGraph.on(n, [(u, v, c) for (u, v), c in zip(pairs, colors)])
            if not naive_has_pattern(g):
                found.add(g)
            assert is_pattern_avoiding_tree(g) == (not naive_has_pattern(g))
    assert found == set(enumerate_colored_trees(n))


def test_inverse_color_map_round_trip():
    for t in enumerate_rooted_trees(4):
        g = color_map(t)
        back = inverse_color_map(g)
        assert back.root == t.root and set(back.arcs) == set(t.arcs)
        assert root_of(g) == t.root


def test_inverse_reports_pattern():
    g = ColoredGraph.on(3, [(1, 3, RED), (2, 3, RED)])
    with pytest.raises(PatternViolationError) as exc:
        inverse_color_map(g)
    assert exc.value.pattern == "1r3r2" and exc.value.triple == (1, 2, 3)
    assert pattern_violations(ColoredGraph.on(3, [(1, 2, BLUE), (1, 3, BLUE)])) == [("2b1b3", (1, 2, 3))]
    assert pattern_violations(ColoredGraph.on(3, [(1, 2, RED), (2, 3, BLUE)])) == [("1r2b3", (1, 2, 3))]


def test_prufer_decode_known_sequence():
    # sequence (4, 4) on four letters is the star centered at 4
    assert sorted(prufer_decode((4, 4), (1, 2, 3, 4))) == [(1, 4), (2, 4), (3, 4)]


def test_colored_trees_on_arbitrary_letters():
    trees = colored_trees_on((2, 5, 7))
    assert len(trees) == 9
    assert all(g.vertices == (2, 5, 7) for g in trees)


def test_consistent_orientation():
    for g in enumerate_colored_trees(4):
        o = oriented_copy(g)
        assert is_consistent(o)
        assert unoriented_copy(o) == g
    assert not is_consistent(OrientedGraph.on(2, [(2, 1, RED)]))


def test_format_edges():
    assert format_edges(ColoredGraph.on(3, [(1, 2, RED), (1, 3, BLUE)])) == "r1-2 b1-3"
    assert format_edges(OrientedGraph.on(2, [(2, 1, BLUE)])) == "b2>1"
    assert Color.parse("blue") is BLUE and RED.char == "r"


def test_graph_validation():
    with pytest.raises(DomainError):
        ColoredGraph.on(2, [(1, 1, RED)])
    with pytest.raises(DomainError):
        ColoredGraph.on(2, [(1, 3, RED)])


@pytest.mark.parametrize("n", range(1, 7))
def test_increasing_edge_counts(n):
    table = count_by_increasing_edges(n)
    assert list(table.a) == increasing_edge_polynomial(n)
    assert table.a[n - 1] == math.factorial(n - 1)
    assert table.total == n ** (n - 1)
    if n <= 5:
        assert list(table.a) == naive_increasing_counts(n)


def test_increasing_edge_polynomial_small():
    # (x + 2)(2x + 1) = 2x^2 + 5x + 2
    assert increasing_edge_polynomial(3) == [2, 5, 2]
    with pytest.raises(EmptyAlphabetError):
        increasing_edge_polynomial(0)


@pytest.mark.parametrize("n,bell", [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)])
def test_set_partitions_bell(n, bell):
    parts = list(set_partitions(range(1, n + 1)))
    assert len(parts) == bell
    for p in parts:
        assert [max(b) for b in p] == sorted(max(b) for b in p)
        assert sorted(x for b in p for x in b) == list(range(1, n + 1))
