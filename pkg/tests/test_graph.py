"""Comparison graph, cycle/path enumeration, cycle quantities."""

import numpy as np
import pytest

from pcindex import (
    Cycle,
    CycleCapExceeded,
    NoPath,
    Path,
    PCMatrix,
    build_graph,
    cycle_inconsistency,
    cycle_ratio,
    degree_matrix,
    enumerate_cycles,
    enumerate_paths,
    is_irreducible,
    path_product,
)
from tests.conftest import brute_cycles, brute_paths, random_complete, random_pattern

# canonical simple cycle counts of the complete graph, n = 3..7
COMPLETE_CYCLES = {3: 1, 4: 7, 5: 37, 6: 197, 7: 1172}


def complete(n):
    return PCMatrix(np.ones((n, n)))


def test_graph_basics(inc4):
    g = build_graph(inc4)
    assert g.n == 4
    assert g.edges == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3))
    assert g.has_edge(1, 2) and g.has_edge(2, 1)
    assert not g.has_edge(2, 3)
    assert not g.has_edge(1, 1)
    assert g.neighbors(0) == (1, 2, 3)
    assert g.neighbors(3) == (0, 1)
    assert g.degree(0) == 3 and g.degree(2) == 2
    assert g.label(0, 1) == 2.0 / 3.0
    assert g.label(1, 0) == pytest.approx(1.5)
    with pytest.raises(KeyError):
        g.label(2, 3)


def test_is_irreducible(tri3, inc4, sparse7, disconnected4):
    assert is_irreducible(build_graph(tri3))
    assert is_irreducible(build_graph(inc4))
    assert is_irreducible(build_graph(sparse7))
    assert not is_irreducible(build_graph(disconnected4))


def test_degree_matrix(inc4, sparse7):
    assert np.array_equal(np.diag(degree_matrix(build_graph(inc4))), [3, 3, 2, 2])
    assert np.array_equal(
        np.diag(degree_matrix(build_graph(sparse7))), [2, 4, 3, 3, 3, 3, 4]
    )
    d = degree_matrix(build_graph(inc4))
    assert (d == np.diag(np.diag(d))).all()


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_cycle_counts_complete(n):
    assert len(enumerate_cycles(build_graph(complete(n)))) == COMPLETE_CYCLES[n]


def test_cycles_are_canonical_sorted_unique():
    out = enumerate_cycles(build_graph(complete(5)))
    seqs = [c.vertices for c in out]
    assert seqs == sorted(seqs)
    assert len(set(seqs)) == len(seqs)
    for s in seqs:
        assert s[0] == min(s)
        assert s[1] < s[-1]
        assert len(set(s)) == len(s) >= 3


@pytest.mark.parametrize("n,extra", [(4, 2), (5, 3), (5, 6), (6, 4), (6, 9)])
def test_cycles_match_brute_force(n, extra):
    rng = np.random.default_rng(100 * n + extra)
    m = PCMatrix(np.ones((n, n)), random_pattern(rng, n, extra))
    g = build_graph(m)
    got = {c.vertices for c in enumerate_cycles(g)}
    assert got == brute_cycles(n, g.has_edge)


def test_cycles_min_len_filter():
    g = build_graph(complete(4))
    only_squares = enumerate_cycles(g, min_len=4)
    assert len(only_squares) == 3
    assert all(len(c.vertices) == 4 for c in only_squares)
    got = {c.vertices for c in only_squares}
    assert got == brute_cycles(4, g.has_edge, min_len=4)
    with pytest.raises(ValueError):
        enumerate_cycles(g, min_len=2)


def test_sparse7_has_no_triads_but_cycles(sparse7):
    g = build_graph(sparse7)
    cycles = enumerate_cycles(g)
    assert cycles  # irreducible with redundancy, so cycles exist
    assert min(len(c.vertices) for c in cycles) == 4  # no triads at all
    assert (0, 1, 3, 6) in {c.vertices for c in cycles}
    assert {c.vertices for c in cycles} == brute_cycles(7, g.has_edge)


def test_cycle_cap():
    g = build_graph(complete(9))
    with pytest.raises(CycleCapExceeded):
        enumerate_cycles(g)  # free enumeration only up to n = 8
    with pytest.raises(CycleCapExceeded):
        enumerate_cycles(g, max_cycles=50)
    some = enumerate_cycles(build_graph(complete(5)), max_cycles=37)
    assert len(some) == 37
    # n = 8 is still free
    assert len(enumerate_cycles(build_graph(complete(8)))) == 8018


def test_path_count_complete7():
    g = build_graph(complete(7))
    assert len(enumerate_paths(g, 0, 1)) == 326
    assert len(enumerate_paths(g, 3, 5)) == 326


def test_paths_inc4(inc4):
    g = build_graph(inc4)
    got = [p.vertices for p in enumerate_paths(g, 2, 3)]
    assert got == [(2, 0, 1, 3), (2, 0, 3), (2, 1, 0, 3), (2, 1, 3)]
    assert got == sorted(got)
    for p in enumerate_paths(g, 2, 3):
        assert path_product(g, p) == pytest.approx(3.0 / 8.0, rel=1e-12)


@pytest.mark.parametrize("n,extra", [(4, 1), (5, 2), (6, 5)])
def test_paths_match_brute_force(n, extra):
    rng = np.random.default_rng(7 * n + extra)
    m = PCMatrix(np.ones((n, n)), random_pattern(rng, n, extra))
    g = build_graph(m)
    for i in range(n):
        for j in range(i + 1, n):
            got = {p.vertices for p in enumerate_paths(g, i, j)}
            assert got == brute_paths(n, g.has_edge, i, j)


def test_paths_argument_errors(disconnected4):
    g = build_graph(complete(4))
    with pytest.raises(ValueError):
        enumerate_paths(g, 2, 2)
    with pytest.raises(ValueError):
        enumerate_paths(g, 0, 9)
    with pytest.raises(NoPath):
        enumerate_paths(build_graph(disconnected4), 0, 2)


def test_cycle_ratio_and_inconsistency(sparse7, tri3):
    g = build_graph(sparse7)
    c = Cycle((0, 1, 3, 6))
    assert cycle_ratio(g, c) == pytest.approx(10.5, rel=1e-12)
    assert cycle_inconsistency(g, c) == pytest.approx(19.0 / 21.0, rel=1e-12)
    g3 = build_graph(tri3)
    assert cycle_ratio(g3, Cycle((0, 1, 2))) == pytest.approx(0.5, rel=1e-12)
    assert cycle_inconsistency(g3, Cycle((0, 1, 2))) == 0.5


def test_cycle_inconsistency_direction_invariant():
    rng = np.random.default_rng(3)
    m = random_complete(rng, 5)
    g = build_graph(m)
    for c in enumerate_cycles(g):
        back = (c.vertices[0],) + tuple(reversed(c.vertices[1:]))
        kf = cycle_inconsistency(g, c)
        kb = cycle_inconsistency(g, Cycle(back))
        assert kf == pytest.approx(kb, rel=1e-9)
        assert 0.0 <= kf < 1.0
        assert cycle_ratio(g, Cycle(back)) == pytest.approx(
            1.0 / cycle_ratio(g, c), rel=1e-9
        )


def test_path_product_single_edge(tri3):
    g = build_graph(tri3)
    assert path_product(g, Path((0, 2))) == 12.0
    assert path_product(g, Path((2, 0))) == 1.0 / 12.0


def test_consistent_matrix_all_cycle_ratios_one():
    rng = np.random.default_rng(11)
    u = np.exp(rng.uniform(-1, 1, 6))
    m = PCMatrix(u[:, None] / u[None, :])
    g = build_graph(m)
    for c in enumerate_cycles(g):
        assert cycle_inconsistency(g, c) <= 1e-12
