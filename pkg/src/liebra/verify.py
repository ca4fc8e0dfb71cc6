"""Verification suites for the ranks, normal forms and pairings computed by the package.

Each suite returns a ``SuiteResult`` holding the number of checks, failures
as replayable strings and the wall time.  ``run_suites`` executes several in a
thread pool sized by the ``LIEBRA_THREADS`` environment variable.
"""

from __future__ import annotations

import itertools
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .combinatorics import (
    BLUE,
    RED,
    OrientedGraph,
    count_by_increasing_edges,
    enumerate_colored_trees,
    format_edges,
    increasing_edge_polynomial,
    is_pattern_avoiding_tree,
    oriented_copy,
    prufer_decode,
)
from .eil import eil_basis, eil_normalize, is_oriented_tree
from .lincombo import LinCombo
from .monomials import (
    basis_monomial,
    enumerate_monomials,
    is_basis_monomial,
    print_monomial,
    random_monomial,
    tree_of_monomial,
)
from .orders import leq_ind, linear_extension, op_reachability
from .pairing import (
    GAMMA_KINDS,
    THETA_KINDS,
    matrix_against,
    pair,
    pairing_matrix,
    pairing_support,
    pairing_vector,
    theta_relation_generators,
    gamma_relation_generators,
)
from .poisson import (
    QBT_KINDS,
    com_matrix,
    enumerate_forests,
    enumerate_qbt,
    exp_formula_check,
    pair_com,
    pair_com_combo,
    partitions,
    poisson_basis,
    poisson_normalize,
    poisson_normalize_combo,
    qbt_relation_generators,
    random_qbt,
)
from .rewrite import RELATION_KINDS, generate_relations, lc_normalize, relation_audit

MAX_RECORDED = 20


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0
    notes: list = field(default_factory=list)
    failure_count: int = 0

    @property
    def ok(self) -> bool:
        return self.failure_count == 0

    def check(self, condition: bool, reproducer: Callable[[], str] | str = ""):
        self.checks += 1
        if not condition:
            self.failure_count += 1
            if len(self.failures) < MAX_RECORDED:
                self.failures.append(reproducer() if callable(reproducer) else reproducer)

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "ok": self.ok,
            "checks": self.checks,
            "failure_count": self.failure_count,
            "failures": self.failures,
            "seconds": round(self.seconds, 3),
            "notes": self.notes,
        }

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.checks} checks, {self.failure_count} failures, {self.seconds:.2f}s"


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        result = fn(*args, **kwargs)
        result.seconds = time.perf_counter() - start
        return result

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _vector_on_trees(t, trees: set) -> dict:
    return {g: v for g, v in pairing_vector(t).items() if g in trees}


def _combo_vector(combo, cache: dict, trees: set | None = None) -> dict:
    acc: dict = {}
    for t, c in combo.items():
        vec = cache.get(t)
        if vec is None:
            vec = cache[t] = pairing_vector(t)
        for g, v in vec.items():
            if trees is None or g in trees:
                acc[g] = acc.get(g, 0) + c * v
    return {g: v for g, v in acc.items() if v}


@_timed
def suite_rank(max_n: int = 6) -> SuiteResult:
    """|pattern-avoiding trees| = |basis| = n^(n-1); basis monomials counted inside M_n for small n."""
    r = SuiteResult("rank")
    for n in range(1, max_n + 1):
        trees = enumerate_colored_trees(n)
        r.check(len(trees) == n ** (n - 1), f"n={n}: {len(trees)} trees")
        r.check(all(is_pattern_avoiding_tree(g) for g in trees), f"n={n}: a tree contains a pattern")
        basis = {basis_monomial(g) for g in trees}
        r.check(len(basis) == n ** (n - 1), f"n={n}: {len(basis)} distinct basis monomials")
        r.check(all(tree_of_monomial(b) == g for g in trees for b in [basis_monomial(g)]), f"n={n}: round trip")
        if n <= 4:
            found = sum(1 for m in enumerate_monomials(n) if is_basis_monomial(m))
            r.check(found == n ** (n - 1), f"n={n}: {found} monomials pass the basis criteria")
    return r


@_timed
def suite_poisson_rank(max_n: int = 5, exp_n: int = 8) -> SuiteResult:
    r = SuiteResult("poisson-rank")
    for n in range(1, max_n + 1):
        size = len(poisson_basis(n))
        r.check(size == (n + 1) ** (n - 1), f"n={n}: {size} basis products")
        r.check(len(set(poisson_basis(n))) == size, f"n={n}: repeated basis products")
    rep = exp_formula_check(exp_n)
    for n, got, want in rep.rows:
        r.check(got == want, f"exp formula n={n}: {got} != {want}")
    return r


@_timed
def suite_lc(max_n: int = 4, sample_n: int = 5, samples: int = 10000, seed: int = 0) -> SuiteResult:
    """LC outputs basis keys and preserves every pairing with oriented trees."""
    r = SuiteResult("lc-normalize")
    cache: dict = {}
    for n in range(1, max_n + 1):
        trees = set(enumerate_colored_trees(n))
        for m in enumerate_monomials(n):
            out = lc_normalize(m)
            r.check(all(is_basis_monomial(b) for b in out), lambda: f"non-basis key in LC({print_monomial(m)})")
            r.check(
                _vector_on_trees(m, trees) == _combo_vector(out, cache, trees),
                lambda: f"pairing oracle fails for {print_monomial(m)}",
            )
    if samples and sample_n:
        rng = random.Random(seed)
        trees = set(enumerate_colored_trees(sample_n))
        for _ in range(samples):
            m = random_monomial(range(1, sample_n + 1), rng)
            out = lc_normalize(m)
            r.check(all(is_basis_monomial(b) for b in out), lambda: f"non-basis key in LC({print_monomial(m)})")
            r.check(
                _vector_on_trees(m, trees) == _combo_vector(out, cache, trees),
                lambda: f"pairing oracle fails for {print_monomial(m)}",
            )
    return r


@_timed
def suite_matrix(min_n: int = 2, max_n: int = 5) -> SuiteResult:
    """Upper triangular pairing matrix with unit diagonal under the linear extension."""
    r = SuiteResult("pairing-matrix")
    for n in range(min_n, max_n + 1):
        mat = pairing_matrix(n, linear_extension(n))
        bad = mat.triangular_violations()
        r.check(not bad, lambda: f"n={n}: below-diagonal entries at {bad[:5]}")
        r.check(mat.diagonal_ok(), f"n={n}: diagonal entry outside +-1")
        r.check(abs(mat.determinant()) == 1, f"n={n}: determinant {mat.determinant()}")
        r.notes.append(f"n={n}: {len(mat.order)}x{len(mat.order)}, det {mat.determinant()}")
    return r


def _graph_side_zero(combo) -> bool:
    acc: dict = {}
    for g, c in combo.items():
        for t, v in pairing_support(g).items():
            acc[t] = acc.get(t, 0) + c * v
    return not any(acc.values())


@_timed
def suite_vanishing(exhaustive_n: int = 3, sampled_ns=(4, 5), samples: int = 1000, seed: int = 0) -> SuiteResult:
    """The pairing kills monomial-side and graph-side relation generators.

    Monomial side: the combined pairing vector over all trees is zero, which
    covers every orientation since reversing an edge only flips the sign.
    Graph side: the combined pairing with every monomial is zero.
    """
    r = SuiteResult("relation-vanishing")
    cache: dict = {}
    plan = [(exhaustive_n, None)] + [(n, samples) for n in sampled_ns]
    for n, count in plan:
        for kind in THETA_KINDS:
            for combo in theta_relation_generators(n, kind, count, seed):
                r.check(not _combo_vector(combo, cache), lambda: f"J n={n} {kind}: {combo.to_text()}")
        for kind in GAMMA_KINDS:
            for combo in gamma_relation_generators(n, kind, count, seed):
                r.check(_graph_side_zero(combo), lambda: f"I n={n} {kind}: {combo.to_text()}")
    return r


@_timed
def suite_audit(ns=(3, 4, 5), samples: int = 1000, seed: int = 0) -> SuiteResult:
    r = SuiteResult("relation-audit")
    for n in ns:
        for kind in RELATION_KINDS:
            for rel in generate_relations(n, kind, samples, seed + n):
                r.check(relation_audit(rel), lambda: f"n={n} {rel}")
    return r


def random_oriented_tree(n: int, rng: random.Random) -> OrientedGraph:
    letters = list(range(1, n + 1))
    pairs = prufer_decode([rng.choice(letters) for _ in range(n - 2)], letters) if n > 1 else []
    edges = []
    for u, v in pairs:
        if rng.random() < 0.5:
            u, v = v, u
        edges.append((u, v, rng.choice((RED, BLUE))))
    return OrientedGraph.make(letters, edges)


def random_oriented_graph(n: int, k: int, rng: random.Random) -> OrientedGraph:
    letters = list(range(1, n + 1))
    edges = []
    for _ in range(k):
        u, v = rng.sample(letters, 2)
        edges.append((u, v, rng.choice((RED, BLUE))))
    return OrientedGraph.make(letters, edges)


@_timed
def suite_eil(oracle_n: int = 4, samples: int = 10000, fixed_max_n: int = 5, seed: int = 0) -> SuiteResult:
    """Non-trees vanish, O_n is fixed, and normalization preserves the pairing with the basis."""
    r = SuiteResult("eil-normalize")
    rng = random.Random(seed)
    for n in range(1, fixed_max_n + 1):
        for o in eil_basis(n):
            r.check(eil_normalize(o) == {o: 1}, lambda: f"not fixed: {format_edges(o)}")
    n = oracle_n
    order = enumerate_colored_trees(n)
    cols = [basis_monomial(g) for g in order]
    mat = matrix_against(order, cols)
    row_of = {oriented_copy(g): i for i, g in enumerate(order)}
    trees_seen = drawn = 0
    while trees_seen < samples:
        drawn += 1
        if n > 1 and rng.random() < 0.25:
            g = random_oriented_graph(n, rng.choice([n - 1, n - 1, n, n - 2]) if n > 2 else n - 1, rng)
        else:
            g = random_oriented_tree(n, rng)
        out = eil_normalize(g)
        if not is_oriented_tree(g):
            r.check(not out, lambda: f"non-tree kept: {format_edges(g)}")
            continue
        trees_seen += 1
        sup = pairing_support(g)
        lhs = np.array([sup.get(t, 0) for t in cols], dtype=np.int64)
        rhs = np.zeros(len(cols), dtype=np.int64)
        for k, c in out.items():
            rhs += c * mat[row_of[k]]
        r.check(np.array_equal(lhs, rhs), lambda: f"pairing oracle fails for {format_edges(g)}")
    r.notes.append(f"n={n}: {trees_seen} trees checked, {drawn - trees_seen} non-trees")
    return r


@_timed
def suite_counts(max_n: int = 8) -> SuiteResult:
    import math

    r = SuiteResult("increasing-edges")
    for n in range(1, max_n + 1):
        table = count_by_increasing_edges(n)
        poly = increasing_edge_polynomial(n)
        r.check(list(table.a) == poly, f"n={n}: {list(table.a)} vs {poly}")
        r.check(table.a[n - 1] == math.factorial(n - 1), f"n={n}: top count {table.a[n - 1]}")
        r.check(table.total == n ** (n - 1), f"n={n}: total {table.total}")
    return r


@_timed
def suite_com(full_n: int = 3, spot_n: int = 4, spots: int = 5, seed: int = 0) -> SuiteResult:
    """Cross-partition zeros and Kronecker diagonal blocks of the product pairing."""
    r = SuiteResult("com-blocks")
    for n in range(1, full_n + 1):
        rep = com_matrix(n)
        r.check(not rep.cross_violations, lambda: f"n={n}: cross-partition {rep.cross_violations[:3]}")
        r.check(not rep.kron_failures, lambda: f"n={n}: blocks {rep.kron_failures}")
        r.check(not rep.singular_blocks, lambda: f"n={n}: singular {rep.singular_blocks}")
    if spot_n and spots:
        rng = random.Random(seed)
        parts = partitions(spot_n)
        chosen = rng.sample(parts, min(spots, len(parts)))
        rep = com_matrix(spot_n, only=chosen)
        r.check(not rep.cross_violations, lambda: f"n={spot_n}: cross-partition {rep.cross_violations[:3]}")
        r.check(not rep.kron_failures, lambda: f"n={spot_n}: blocks {rep.kron_failures}")
        r.check(not rep.singular_blocks, lambda: f"n={spot_n}: singular {rep.singular_blocks}")
        r.notes.append(f"n={spot_n} partitions: {chosen}")
    return r


def monomials_by_tree(n: int) -> dict:
    out: dict = {}
    for m in enumerate_monomials(n):
        out.setdefault(tree_of_monomial(m), []).append(m)
    return out


@_timed
def suite_sections(ns=(3, 4), sections: int = 20, seed: int = 0) -> SuiteResult:
    """Random monomial sections of the tree map give triangular unit-diagonal matrices."""
    r = SuiteResult("alternative-bases")
    rng = random.Random(seed)
    for n in ns:
        groups = monomials_by_tree(n)
        order = linear_extension(n)
        r.check(set(groups) == set(order), f"n={n}: tree map misses pattern-avoiding trees")
        for _ in range(sections):
            section = [rng.choice(groups[g]) for g in order]
            mat = matrix_against(order, section)
            lower = np.tril(mat, -1)
            r.check(
                not lower.any() and bool(np.all(np.abs(np.diag(mat)) == 1)),
                lambda: f"n={n}: section {[print_monomial(s) for s in section]}",
            )
    return r


@_timed
def suite_orders(max_n: int = 4) -> SuiteResult:
    """Partial-order axioms, refinement of ->op by <=ind, and support of the pairing."""
    r = SuiteResult("orders")
    for n in range(1, max_n + 1):
        trees = enumerate_colored_trees(n)
        reach = op_reachability(n)
        for g, h in itertools.product(trees, repeat=2):
            if g != h:
                r.check(not (leq_ind(g, h) and leq_ind(h, g)), f"antisymmetry {g} / {h}")
            if h in reach[g]:
                r.check(leq_ind(g, h), f"op step not refined: {g} -> {h}")
        pos = {g: i for i, g in enumerate(linear_extension(n))}
        for m in enumerate_monomials(n):
            s = tree_of_monomial(m)
            for g, v in pairing_vector(m).items():
                if g in pos:
                    r.check(leq_ind(g, s), lambda: f"pair(o_{g}, {print_monomial(m)}) = {v} but not below")
        for h in trees:
            for g in pairing_vector(basis_monomial(h)):
                if g in pos:
                    r.check(h in reach[g], f"pair nonzero outside <=op: {g} vs {h}")
    return r


@_timed
def suite_poisson(n: int = 3, sampled_n: int = 4, samples: int = 200, seed: int = 0) -> SuiteResult:
    """Normalization soundness and relation vanishing for the product pairing."""
    r = SuiteResult("poisson")
    rng = random.Random(seed)
    for size, pool in ((n, enumerate_qbt(n)), (sampled_n, None)):
        rows = [f.oriented() for f in enumerate_forests(size)]
        monos = pool if pool is not None else [random_qbt(range(1, size + 1), rng) for _ in range(samples)]
        for p in monos:
            out = poisson_normalize(p)
            for g in rows:
                r.check(pair_com(g, p) == pair_com_combo(g, out), lambda: f"oracle fails: {g} vs {p}")
        for kind in QBT_KINDS:
            gens = qbt_relation_generators(size, kind, None if pool is not None else samples, seed)
            for combo in gens:
                r.check(all(pair_com_combo(g, combo) == 0 for g in rows), lambda: f"{kind} not killed: {combo.to_text()}")
                r.check(not poisson_normalize_combo(combo), lambda: f"{kind} survives normalization: {combo.to_text()}")
        test_monos = list(monos)[: 400]
        for kind in ("S1", "S2", "J1", "J2", "MJ", "multi"):
            for edges in range(1, size):
                gens = gamma_relation_generators(size, kind, 30, seed, edges=edges)
                for combo in gens:
                    r.check(
                        all(pair_com_combo(combo, p) == 0 for p in test_monos),
                        lambda: f"graph {kind} not killed: {combo.to_text()}",
                    )
    return r


SUITES = {
    "rank": (1, suite_rank),
    "poisson-rank": (2, suite_poisson_rank),
    "lc": (3, suite_lc),
    "matrix": (4, suite_matrix),
    "vanishing": (5, suite_vanishing),
    "relations": (6, suite_audit),
    "eil": (7, suite_eil),
    "counts": (8, suite_counts),
    "com": (9, suite_com),
    "sections": (10, suite_sections),
    "orders": (None, suite_orders),
    "poisson": (None, suite_poisson),
}


def scaled_kwargs(name: str, max_n: int, seed: int, samples: int | None) -> dict:
    """Suite parameters capped by ``max_n`` for quick command-line runs."""
    s = samples
    table = {
        "rank": dict(max_n=max(max_n, 1)),
        "poisson-rank": dict(max_n=max_n, exp_n=max(max_n, 8)),
        "lc": dict(max_n=min(max_n, 4), sample_n=max_n if max_n >= 5 else 0, samples=s or 10000, seed=seed),
        "matrix": dict(max_n=max_n),
        "vanishing": dict(exhaustive_n=min(3, max_n), sampled_ns=tuple(range(4, max_n + 1)), samples=s or 1000, seed=seed),
        "relations": dict(ns=tuple(range(3, max_n + 1)), samples=s or 1000, seed=seed),
        "eil": dict(oracle_n=max_n, samples=s or 10000, fixed_max_n=max_n, seed=seed),
        "counts": dict(max_n=max_n),
        "com": dict(full_n=min(3, max_n), spot_n=4 if max_n >= 4 else 0, seed=seed),
        "sections": dict(ns=tuple(n for n in (3, 4) if n <= max_n), seed=seed),
        "orders": dict(max_n=min(max_n, 4)),
        "poisson": dict(n=min(3, max_n), sampled_n=min(4, max_n), samples=min(s or 200, 200), seed=seed),
    }
    return table[name]


def run_suites(names, max_n: int = 4, seed: int = 0, samples: int | None = None, threads: int | None = None) -> list[SuiteResult]:
    if threads is None:
        threads = max(1, int(os.environ.get("LIEBRA_THREADS", "1") or 1))
    jobs = [(name, SUITES[name][1], scaled_kwargs(name, max_n, seed, samples)) for name in names]
    if threads == 1:
        return [fn(**kw) for _, fn, kw in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, **kw) for _, fn, kw in jobs]
        return [f.result() for f in futures]
