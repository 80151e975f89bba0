import io
import random
from fractions import Fraction
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxmatch.exact import invariant_report
from maxmatch.graph import Graph, GraphFormatError, graph6_encode
from maxmatch.sweep import (CSV_COLUMNS, all_graphs, compare_invariants, is_tree, read_graph6_stream,
                            rows_to_csv, tree_extremal_check)
from oracles import graphs, isomorphism_classes


def test_class_counts():
    assert [sum(1 for _ in all_graphs(n)) for n in range(7)] == [1, 1, 2, 4, 11, 34, 156]


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4, 5])
def test_class_counts_against_labeled_dedup(n):
    pairs = list(combinations(range(n), 2))
    labeled = [Graph(n, tuple(p for k, p in enumerate(pairs) if code >> k & 1)) for code in range(1 << len(pairs))]
    ours = list(all_graphs(n))
    assert len(ours) == len(isomorphism_classes(labeled))
    assert len(isomorphism_classes(ours)) == len(ours)


def _code(g):
    pairs = [(i, j) for j in range(1, g.n) for i in range(j)]
    edges = set(g.edges)
    return sum(1 << k for k, p in enumerate(pairs) if p in edges)


def test_representatives_are_minimal_and_sorted():
    for n in range(6):
        reps = list(all_graphs(n))
        codes = [_code(g) for g in reps]
        assert codes == sorted(codes)
        for g in reps:
            assert all(_code(g.relabel(list(p))) >= _code(g) for p in permutations(range(n)))


def test_builtin_limit():
    with pytest.raises(ValueError):
        list(all_graphs(7))


def test_order_three_rows():
    rows, summary = compare_invariants(all_graphs(3))
    connected = [r for r in rows if r.m >= 2]
    assert len(connected) == 2 and all(r.i_avg == 1 for r in connected)
    empty = next(r for r in rows if r.m == 0)
    assert (empty.i_avg, empty.i_ord, empty.i_df, empty.i_arw) == (1, 1, 1, 1)
    assert summary.graphs == 4


def test_rows_sorted_and_ordered_ratio_dominates():
    rows, summary = compare_invariants(g for n in range(7) for g in all_graphs(n))
    assert [r.i_avg for r in rows] == sorted(r.i_avg for r in rows)
    assert all(r.i_ord >= r.i_avg for r in rows)
    assert summary.ord_below_avg == 0
    assert summary.df_above_ord == len(summary.df_above_ord_witnesses)
    assert summary.df_below_avg == len(summary.df_below_avg_witnesses)


def test_csv_schema_and_determinism():
    graphs_5 = list(all_graphs(5))
    text = rows_to_csv(compare_invariants(graphs_5)[0])
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert len(text.splitlines()) == 35
    assert text == rows_to_csv(compare_invariants(graphs_5)[0])
    assert text == rows_to_csv(compare_invariants(graphs_5, workers=2)[0])


def test_graph6_stream():
    stream = io.StringIO("A_\n\nBw\n")
    assert [g.m for g in read_graph6_stream(stream)] == [1, 3]
    with pytest.raises(GraphFormatError) as info:
        list(read_graph6_stream(io.StringIO("A_\nA_?\n")))
    assert info.value.line == 2


@pytest.mark.parametrize("n, trees", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6)])
def test_tree_extremal(n, trees):
    report = tree_extremal_check(n)
    assert len(report.ranking) == trees
    assert report.passed
    assert report.to_json()["passed"]


def test_is_tree():
    assert is_tree(Graph(1, ()))
    assert not is_tree(Graph(0, ()))
    assert not is_tree(Graph(4, ((0, 1), (2, 3))))


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=7), st.randoms(use_true_random=False))
def test_ratios_invariant_under_relabeling(g, rnd: random.Random):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    a, b = invariant_report(g), invariant_report(g.relabel(perm))
    assert (a.i_avg, a.i_ord, a.i_df, a.i_arw) == (b.i_avg, b.i_ord, b.i_df, b.i_arw)


def test_witness_graphs_are_real_exceptions():
    rows, summary = compare_invariants(all_graphs(6))
    by_g6 = {r.graph6: r for r in rows}
    for g6 in summary.df_above_ord_witnesses:
        assert by_g6[g6].i_df > by_g6[g6].i_ord
    for g6 in summary.df_below_avg_witnesses:
        assert by_g6[g6].i_df < by_g6[g6].i_avg
    assert all(isinstance(r.i_df, Fraction) for r in rows)
    assert graph6_encode(Graph(0, ())) == b"?"
