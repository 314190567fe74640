import random
from fractions import Fraction

import pytest

from kordered import Graph, GraphError, is_epsilon_regular, is_super_regular
from kordered.regularity import as_fraction
from oracles import regular_pair_naive


def bipartite_random(rng, na, nb, p):
    edges = [
        (u, na + v) for u in range(na) for v in range(nb) if rng.random() < p
    ]
    return Graph.from_edges(na + nb, edges), list(range(na)), list(range(na, na + nb))


def test_complete_bipartite_always_regular():
    g = Graph.complete_bipartite(6, 6)
    for eps in ("0.05", "0.3", "0.9"):
        v = is_epsilon_regular(g, range(6), range(6, 12), eps)
        assert v.regular and v.mode == "exact"


def test_empty_pair_always_regular():
    g = Graph.empty(12)
    assert is_epsilon_regular(g, range(6), range(6, 12), "0.1").regular


def test_perfect_matching_irregular_with_witness():
    g = Graph.from_edges(12, [(i, 6 + i) for i in range(6)])
    v = is_epsilon_regular(g, range(6), range(6, 12), "0.3")
    assert not v.regular and v.mode == "exact"
    xs, ys, dev = v.witness
    assert dev >= Fraction(3, 10)
    assert len(xs) > Fraction(3, 10) * 6 and len(ys) > Fraction(3, 10) * 6
    # the extreme witness pairs matched vertices together
    assert {6 + x for x in xs} >= set(ys)


def test_exact_matches_enumeration_oracle():
    rng = random.Random(61)
    for _ in range(40):
        na = rng.randint(2, 6)
        nb = rng.randint(2, 6)
        g, a, b = bipartite_random(rng, na, nb, rng.uniform(0.15, 0.9))
        eps = as_fraction(rng.choice(["0.2", "0.3", "0.4", "0.25"]))
        mine = is_epsilon_regular(g, a, b, eps)
        ref, ref_witness = regular_pair_naive(g, a, b, eps)
        assert mine.regular == ref
        if not mine.regular:
            xs, ys, dev = mine.witness
            assert dev >= eps
            assert Fraction(len(xs)) > eps * na
            assert Fraction(len(ys)) > eps * nb


def test_monotone_in_epsilon_exact_mode():
    rng = random.Random(62)
    grid = [Fraction(x, 20) for x in range(2, 19)]
    for _ in range(20):
        g, a, b = bipartite_random(rng, rng.randint(3, 7), rng.randint(3, 7),
                                   rng.uniform(0.2, 0.8))
        verdicts = [is_epsilon_regular(g, a, b, e).regular for e in grid]
        # once regular, regular for every larger epsilon
        if True in verdicts:
            first = verdicts.index(True)
            assert all(verdicts[first:])


def test_sampled_mode_irregular_needs_witness():
    g = Graph.from_edges(12, [(i, 6 + i) for i in range(6)])
    v = is_epsilon_regular(g, range(6), range(6, 12), "0.3", mode="sampled", samples=4000)
    assert v.mode == "sampled"
    if not v.regular:
        xs, ys, dev = v.witness
        assert dev >= Fraction(3, 10)


def test_auto_downgrades_above_cap_and_exact_raises():
    rng = random.Random(63)
    g, a, b = bipartite_random(rng, 16, 16, 0.5)
    v = is_epsilon_regular(g, a, b, "0.2", samples=300)
    assert v.mode == "sampled"
    with pytest.raises(GraphError):
        is_epsilon_regular(g, a, b, "0.2", mode="exact")


def test_super_regular_complete_bipartite():
    g = Graph.complete_bipartite(6, 6)
    assert is_super_regular(g, range(6), range(6, 12), "0.3", "0.9").regular


def test_super_regular_reports_failing_vertex():
    g = Graph.complete_bipartite(6, 6).without_edges([(0, 6 + j) for j in range(6)])
    v = is_super_regular(g, range(6), range(6, 12), "0.3", "0.5")
    assert not v.regular
    assert v.failing_vertex == 0


def test_super_regular_k66_minus_matching():
    g = Graph.complete_bipartite(6, 6).without_edges([(i, 6 + i) for i in range(6)])
    v = is_super_regular(g, range(6), range(6, 12), "0.4", "0.5")
    assert v.regular


def test_degree_floor_is_strict():
    # degree exactly delta*|B| must fail the strict bound
    g = Graph.complete_bipartite(4, 4).without_edges([(0, 4), (0, 5)])
    v = is_super_regular(g, range(4), range(4, 8), "0.9", "0.5")
    assert not v.regular and v.failing_vertex == 0


def test_as_fraction_decimal_semantics():
    assert as_fraction(0.3) == Fraction(3, 10)
    assert as_fraction("0.25") == Fraction(1, 4)
    assert as_fraction(Fraction(1, 3)) == Fraction(1, 3)
    assert as_fraction(1) == 1


def test_sides_validated():
    g = Graph.complete_bipartite(4, 4)
    with pytest.raises(GraphError):
        is_epsilon_regular(g, [0, 1], [1, 2], "0.3")
    with pytest.raises(GraphError):
        is_epsilon_regular(g, [], [4, 5], "0.3")
    with pytest.raises(GraphError):
        is_epsilon_regular(g, [0], [4], "0")
