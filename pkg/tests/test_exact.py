import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings

from maxmatch.exact import (CapExceeded, SizeProfile, clique_maximal_count, invariant_report,
                            matching_profile, max_matching_size, maximal_matching_profile,
                            ordered_maximal_matchings, rg_expected_size, thorn_bipartite_profile,
                            wheel_profile)
from maxmatch.families import (complete_bipartite_graph, complete_graph, path_graph, wheel_graph)
from maxmatch.graph import Graph, empty_graph, is_independent, thorn
from maxmatch.sweep import all_graphs
from oracles import all_matchings, brute_nu, brute_profile, brute_ratios, graphs, graphs_up_to_edges, \
    is_maximal, mu_direct

K3T = thorn(complete_graph(3))


def prof(d):
    return SizeProfile.from_dict(d)


# --- profiles -----------------------------------------------------------------


@pytest.mark.parametrize("g, expected", [
    (path_graph(4), {1: 1, 2: 1}),
    (K3T, {2: 3, 3: 1}),
    (path_graph(6), {2: 3, 3: 1}),
    (empty_graph(1), {0: 1}),
])
def test_maximal_profile_examples(g, expected):
    assert maximal_matching_profile(g).as_dict() == expected


def test_p6_profile_against_edge_subsets():
    g = path_graph(6)
    counts = {}
    for code in range(1 << g.m):
        chosen = [e for k, e in enumerate(g.edges) if code >> k & 1]
        touched = [x for e in chosen for x in e]
        if len(touched) == len(set(touched)) and is_maximal(g.edges, chosen):
            counts[len(chosen)] = counts.get(len(chosen), 0) + 1
    assert maximal_matching_profile(g).as_dict() == counts


@pytest.mark.parametrize("g, expected", [
    (complete_graph(2), {0: 1, 1: 1}),
    (path_graph(4), {0: 1, 1: 3, 2: 1}),
    (empty_graph(0), {0: 1}),
])
def test_matching_profile_examples(g, expected):
    assert matching_profile(g).as_dict() == expected


def test_max_matching_size_examples():
    assert max_matching_size(path_graph(5)) == 2
    assert max_matching_size(K3T) == 3
    assert max_matching_size(empty_graph(1)) == 0


@settings(max_examples=300, deadline=None)
@given(graphs(max_n=8))
def test_profiles_match_brute_force(g):
    assert maximal_matching_profile(g).as_dict() == brute_profile(g, True)
    assert matching_profile(g).as_dict() == brute_profile(g, False)
    assert max_matching_size(g) == brute_nu(g)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8))
def test_maximality_iff_uncovered_independent(g):
    for m in all_matchings(list(g.edges)):
        covered = {x for e in m for x in e}
        uncovered = [v for v in range(g.n) if v not in covered]
        assert is_maximal(g.edges, m) == is_independent(g, uncovered)


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=8))
def test_profile_shape_invariants(g):
    p = maximal_matching_profile(g)
    nu = p.top
    assert p.t0 >= 1
    assert all(2 * k >= nu for k in p.as_dict())


def test_cap():
    with pytest.raises(CapExceeded):
        maximal_matching_profile(path_graph(27))
    assert maximal_matching_profile(path_graph(27), cap=None).top == 13
    assert maximal_matching_profile(path_graph(27), cap=30).top == 13
    with pytest.raises(CapExceeded):
        rg_expected_size(path_graph(5), cap=4)


def test_size_profile_trims_and_arithmetic():
    p = SizeProfile((0, 2, 0, 0))
    assert p.counts == (0, 2) and p.top == 1 and p[7] == 0
    assert (p + prof({3: 1})).as_dict() == {1: 2, 3: 1}
    assert p.shifted(2).as_dict() == {3: 2}
    assert SizeProfile((Fraction(4, 1),)).counts == (4,)
    with pytest.raises(ValueError):
        SizeProfile((Fraction(1, 2),))
    assert str(prof({1: 1, 2: 1})) == "{1:1, 2:1}"


# --- random greedy ---------------------------------------------------------


def test_rg_examples():
    assert rg_expected_size(complete_graph(2)) == 1
    assert rg_expected_size(path_graph(4)) == Fraction(5, 3)
    assert rg_expected_size(K3T) == Fraction(7, 3)
    assert rg_expected_size(empty_graph(3)) == 0


@pytest.mark.parametrize("g", graphs_up_to_edges(5), ids=lambda g: f"n{g.n}m{g.m}")
def test_rg_recursion_matches_direct_definition(g):
    seqs = list(ordered_maximal_matchings(g))
    assert sum(Fraction(1, p) for _, p in seqs) == 1
    assert rg_expected_size(g) == mu_direct(g)
    assert rg_expected_size(g) == sum(Fraction(len(m), p) for m, p in seqs)


def test_ordered_count_identity():
    for g in (K3T, path_graph(5), complete_graph(4), wheel_graph(5)):
        sizes = {}
        for seq, _ in ordered_maximal_matchings(g):
            sizes[len(seq)] = sizes.get(len(seq), 0) + 1
        p = maximal_matching_profile(g)
        assert sizes == {k: math.factorial(k) * c for k, c in p.as_dict().items()}


# --- invariant report ------------------------------------------------------------


def test_report_thorn_k3():
    r = invariant_report(K3T)
    assert (r.nu, r.t0, r.t1) == (3, 4, 9)
    assert r.i_avg == Fraction(3, 4)
    assert (r.t0_ord, r.t1_ord, r.i_ord) == (12, 30, Fraction(5, 6))
    assert r.i_df == Fraction(7, 9) and r.mu == Fraction(7, 3)


def test_report_p4():
    r = invariant_report(path_graph(4))
    assert (r.i_avg, r.i_ord, r.i_df, r.mu) == (Fraction(3, 4), Fraction(5, 6), Fraction(5, 6), Fraction(5, 3))


def test_report_k33_and_empty():
    r = invariant_report(complete_bipartite_graph(3, 3))
    assert r.i_avg == r.i_ord == r.i_df == 1
    e = invariant_report(empty_graph(0))
    assert (e.nu, e.i_avg, e.i_ord, e.i_arw, e.i_df) == (0, 1, 1, 1, 1)


def test_report_arw_counts_empty_matching():
    r = invariant_report(complete_graph(2))
    assert (r.t0_arw, r.t1_arw, r.i_arw) == (2, 1, Fraction(1, 2))


def test_report_json():
    data = invariant_report(K3T).to_json()
    assert data["i_avg"] == "3/4" and data["i_avg_dec"] == 0.75
    assert data["i_df"] == "7/9"
    assert json.loads(json.dumps(data)) == data
    assert {"nu", "t0", "t1", "t0_ord", "t1_ord", "t0_arw", "t1_arw", "mu", "mu_dec"} <= set(data)


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=7))
def test_report_matches_brute_ratios(g):
    r = invariant_report(g)
    expected = brute_ratios(g)
    assert {k: getattr(r, k) for k in expected} == expected


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=7))
def test_ratio_bounds_and_order(g):
    r = invariant_report(g)
    if r.nu >= 1:
        assert Fraction(1, 2) < r.i_avg <= 1
    assert r.i_ord >= r.i_avg


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_thorn_duality_random(g):
    r = invariant_report(g)
    if r.nu >= 1:
        assert invariant_report(thorn(g)).i_avg == 1 - r.nu * r.i_arw / g.n


def test_thorn_duality_every_class_up_to_6():
    for n in range(1, 7):
        for g in all_graphs(n):
            r = invariant_report(g)
            if r.nu >= 1:
                assert invariant_report(thorn(g)).i_avg == 1 - r.nu * r.i_arw / n


def test_equimatchable_families():
    for s in range(1, 9):
        assert invariant_report(complete_graph(s)).i_avg == 1
    for a in range(1, 5):
        for b in range(1, 5):
            assert invariant_report(complete_bipartite_graph(a, b)).i_avg == 1


# --- closed forms ------------------------------------------------------------


def test_clique_count_examples():
    assert clique_maximal_count(3) == 3
    assert clique_maximal_count(2) == 1
    assert clique_maximal_count(6) == 15
    assert clique_maximal_count(0) == clique_maximal_count(-1) == 1
    with pytest.raises(ValueError):
        clique_maximal_count(-2)


def test_clique_count_matches_enumeration():
    for s in range(0, 10):
        assert maximal_matching_profile(complete_graph(s)).t0 == clique_maximal_count(s)


def test_wheel_profile_examples():
    assert wheel_profile(6).as_dict() == {2: 5, 3: 5}
    assert wheel_profile(5).as_dict() == {2: 10}
    assert wheel_profile(4).as_dict() == {2: 3}
    with pytest.raises(ValueError):
        wheel_profile(3)


def test_wheel_profile_matches_enumeration():
    for n in range(4, 13):
        assert wheel_profile(n) == maximal_matching_profile(wheel_graph(n))


def test_thorn_bipartite_examples():
    assert thorn_bipartite_profile(1, 2).as_dict() == {2: 2, 3: 1}
    assert thorn_bipartite_profile(0, 3).as_dict() == {3: 1}
    assert thorn_bipartite_profile(2, 2).as_dict() == {2: 2, 3: 4, 4: 1}


def test_thorn_bipartite_matches_enumeration():
    for c in range(0, 4):
        for n in range(0, 6):
            g = thorn(complete_bipartite_graph(c, n))
            assert thorn_bipartite_profile(c, n) == maximal_matching_profile(g)


def test_graph_equality_is_label_sensitive():
    a = Graph(3, ((0, 1),))
    b = Graph(3, ((1, 2),))
    assert a != b
    assert invariant_report(a) == invariant_report(b)
