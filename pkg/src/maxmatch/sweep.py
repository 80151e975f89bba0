"""Exhaustive small-order graph sweeps and invariant comparison tables."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Iterator, TextIO

from .exact import DEFAULT_CAP, invariant_report
from .families import path_graph
from .graph import Graph, GraphFormatError, graph6_decode, graph6_encode, thorn

BUILTIN_MAX_N = 6

CSV_COLUMNS = ("graph6", "n", "m", "nu", "I", "I_ord", "I_DF", "I_ARW",
               "I_dec", "I_ord_dec", "I_DF_dec", "I_ARW_dec")


def _pairs(n: int) -> list[tuple[int, int]]:
    # graph6 bit order: column-major upper triangle
    return [(i, j) for j in range(1, n) for i in range(j)]


def code_to_graph(n: int, code: int) -> Graph:
    pairs = _pairs(n)
    return Graph(n, tuple(sorted(p for k, p in enumerate(pairs) if code >> k & 1)))


def all_graphs(n: int) -> Iterator[Graph]:
    """One graph per isomorphism class on ``n`` vertices, in canonical order.

    A class is represented by the labeling whose adjacency code (bit ``k`` is
    the ``k``-th pair in graph6 order) is smallest.  Codes are scanned in
    increasing order and each new code marks its whole orbit, so the first
    code met in an orbit is its minimum.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > BUILTIN_MAX_N:
        raise ValueError(f"built-in generation supports n <= {BUILTIN_MAX_N}; pipe larger orders as graph6")
    pairs = _pairs(n)
    index = {p: k for k, p in enumerate(pairs)}
    perm_maps = []
    for perm in permutations(range(n)):
        perm_maps.append([index[tuple(sorted((perm[i], perm[j])))] for i, j in pairs])
    seen = bytearray(1 << len(pairs))
    for code in range(1 << len(pairs)):
        if seen[code]:
            continue
        bits = [k for k in range(len(pairs)) if code >> k & 1]
        for pm in perm_maps:
            image = 0
            for k in bits:
                image |= 1 << pm[k]
            seen[image] = 1
        yield code_to_graph(n, code)


def read_graph6_stream(stream: Iterable[str]) -> Iterator[Graph]:
    """Newline-delimited graph6; blank lines skipped, errors carry line numbers."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield graph6_decode(line)
        except GraphFormatError as exc:
            raise GraphFormatError(str(exc), lineno) from None


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        for w in g.adjacency[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


@dataclass(frozen=True)
class ComparisonRow:
    graph6: str
    n: int
    m: int
    nu: int
    i_avg: Fraction
    i_ord: Fraction
    i_df: Fraction
    i_arw: Fraction

    def csv_fields(self) -> list:
        ratios = (self.i_avg, self.i_ord, self.i_df, self.i_arw)
        return ([self.graph6, self.n, self.m, self.nu]
                + [f"{x.numerator}/{x.denominator}" for x in ratios]
                + [f"{float(x):.17g}" for x in ratios])


@dataclass(frozen=True)
class ComparisonSummary:
    graphs: int
    df_above_ord: int
    df_below_avg: int
    ord_below_avg: int
    df_above_ord_witnesses: tuple[str, ...]
    df_below_avg_witnesses: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "graphs": self.graphs,
            "df_above_ord": self.df_above_ord,
            "df_below_avg": self.df_below_avg,
            "ord_below_avg": self.ord_below_avg,
            "df_above_ord_witnesses": list(self.df_above_ord_witnesses),
            "df_below_avg_witnesses": list(self.df_below_avg_witnesses),
        }


def _row(args) -> ComparisonRow:
    g, cap = args
    rep = invariant_report(g, cap)
    return ComparisonRow(graph6_encode(g).decode("ascii"), g.n, g.m, rep.nu,
                         rep.i_avg, rep.i_ord, rep.i_df, rep.i_arw)


def compare_invariants(graphs: Iterable[Graph], cap: int | None = DEFAULT_CAP,
                       workers: int = 1) -> tuple[list[ComparisonRow], ComparisonSummary]:
    """Rows sorted by I (stable, so ties keep input order) plus exception counts."""
    jobs = [(g, cap) for g in graphs]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs, chunksize=16))
    else:
        rows = [_row(job) for job in jobs]
    rows.sort(key=lambda r: r.i_avg)
    above = [r.graph6 for r in rows if r.i_df > r.i_ord]
    below = [r.graph6 for r in rows if r.i_df < r.i_avg]
    summary = ComparisonSummary(len(rows), len(above), len(below),
                                sum(1 for r in rows if r.i_ord < r.i_avg), tuple(above), tuple(below))
    return rows, summary


def write_csv(rows: Iterable[ComparisonRow], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())


def rows_to_csv(rows: Iterable[ComparisonRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


@dataclass(frozen=True)
class TreeExtremalReport:
    n: int
    path_value: Fraction
    ranking: tuple[tuple[str, Fraction], ...]

    @property
    def minimum(self) -> Fraction:
        return self.ranking[0][1]

    @property
    def passed(self) -> bool:
        return self.path_value == self.minimum

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "passed": self.passed,
            "path_value": f"{self.path_value.numerator}/{self.path_value.denominator}",
            "ranking": [{"tree": g6, "I_thorn": f"{v.numerator}/{v.denominator}", "I_thorn_dec": float(v)}
                        for g6, v in self.ranking],
        }


def tree_extremal_check(n: int, cap: int | None = DEFAULT_CAP) -> TreeExtremalReport:
    """Rank the thorns of all trees of order ``n`` by I; the path should come first."""
    if not 1 <= n <= BUILTIN_MAX_N:
        raise ValueError(f"tree order must be in 1..{BUILTIN_MAX_N}")
    ranking = []
    for t in all_graphs(n):
        if is_tree(t):
            value = invariant_report(thorn(t), cap).i_avg
            ranking.append((graph6_encode(t).decode("ascii"), value))
    ranking.sort(key=lambda item: item[1])
    path_value = invariant_report(thorn(path_graph(n)), cap).i_avg
    return TreeExtremalReport(n, path_value, tuple(ranking))
