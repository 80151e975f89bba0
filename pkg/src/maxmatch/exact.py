"""Exact matching statistics by exhaustive enumeration.

Everything here returns Python ints or :class:`fractions.Fraction`; there
is no floating point on this path.
"""

from __future__ import annotations

import math
import operator
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping

from .graph import Graph

DEFAULT_CAP = int(os.environ.get("MAXMATCH_CAP", "26"))


class CapExceeded(ValueError):
    """Graph too large for the enumeration-based routines."""


def _as_int(c) -> int:
    if isinstance(c, Fraction):
        if c.denominator != 1:
            raise ValueError(f"non-integral count {c}")
        return c.numerator
    return operator.index(c)


@dataclass(frozen=True)
class SizeProfile:
    """Counts of matchings indexed by size; trailing zeros are trimmed."""

    counts: tuple[int, ...] = ()

    def __post_init__(self):
        counts = tuple(_as_int(c) for c in self.counts)
        end = len(counts)
        while end and counts[end - 1] == 0:
            end -= 1
        object.__setattr__(self, "counts", counts[:end])

    @classmethod
    def from_dict(cls, data: Mapping[int, int]) -> "SizeProfile":
        if not data:
            return cls(())
        if min(data) < 0:
            raise ValueError("negative matching size")
        counts = [0] * (max(data) + 1)
        for k, v in data.items():
            counts[int(k)] += v
        return cls(tuple(counts))

    def as_dict(self) -> dict[int, int]:
        return {k: c for k, c in enumerate(self.counts) if c}

    def __getitem__(self, k: int) -> int:
        return self.counts[k] if 0 <= k < len(self.counts) else 0

    def __len__(self) -> int:
        return len(self.counts)

    @property
    def t0(self) -> int:
        return sum(self.counts)

    @property
    def t1(self) -> int:
        return sum(k * c for k, c in enumerate(self.counts))

    @property
    def top(self) -> int:
        """Largest index with a nonzero count (-1 for the zero profile)."""
        return len(self.counts) - 1

    def shifted(self, j: int) -> "SizeProfile":
        return SizeProfile((0,) * j + self.counts)

    def __add__(self, other: "SizeProfile") -> "SizeProfile":
        size = max(len(self), len(other))
        return SizeProfile(tuple(self[k] + other[k] for k in range(size)))

    def scaled(self, a: int) -> "SizeProfile":
        return SizeProfile(tuple(a * c for c in self.counts))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k}:{c}" for k, c in self.as_dict().items()) + "}"


def _check_cap(g: Graph, cap: int | None) -> None:
    if cap is not None and g.n > cap:
        raise CapExceeded(f"graph has {g.n} vertices, enumeration cap is {cap}")


def _combine(a: tuple[int, ...], b: tuple[int, ...], shift: int) -> tuple[int, ...]:
    # a + (b shifted up by `shift`)
    size = max(len(a), len(b) + shift)
    out = list(a) + [0] * (size - len(a))
    for k, c in enumerate(b):
        out[k + shift] += c
    return tuple(out)


def _count_matchings(g: Graph, maximal: bool) -> tuple[int, ...]:
    """Include/exclude backtracking over the sorted edge list.

    Identical subproblems (same next edge, same covered status of the
    vertices that still matter) are memoized.  For maximal matchings the
    uncovered set must be independent; the edge ``uw`` is checked as soon as
    both endpoints have seen their last incident edge.
    """
    edges = g.edges
    m = len(edges)
    nbrs = g.neighbor_masks
    last = [-1] * g.n
    for t, (u, v) in enumerate(edges):
        last[u] = t
        last[v] = t
    if maximal:
        release = [max([last[v]] + [last[w] for w in g.adjacency[v]]) for v in range(g.n)]
    else:
        release = list(last)
    retiring: list[list[int]] = [[] for _ in range(m)]
    drop = [0] * m
    for v in range(g.n):
        if last[v] >= 0:
            retiring[last[v]].append(v)
            drop[release[v]] |= 1 << v
    retired_by = [0] * m
    acc = 0
    for t in range(m):
        for v in retiring[t]:
            acc |= 1 << v
        retired_by[t] = acc

    @lru_cache(maxsize=None)
    def solve(t: int, covered: int) -> tuple[int, ...]:
        if t == m:
            return (1,)
        u, v = edges[t]
        result: tuple[int, ...] = ()
        branches = [(covered, 0)]
        if not (covered >> u & 1 or covered >> v & 1):
            branches.append((covered | 1 << u | 1 << v, 1))
        for cov, took in branches:
            if maximal:
                done = retired_by[t]
                ok = True
                for x in retiring[t]:
                    if not cov >> x & 1 and nbrs[x] & done & ~cov:
                        ok = False
                        break
                if not ok:
                    continue
            sub = solve(t + 1, cov & ~drop[t])
            result = _combine(result, sub, took)
        return result

    try:
        return solve(0, 0)
    finally:
        solve.cache_clear()


def maximal_matching_profile(g: Graph, cap: int | None = DEFAULT_CAP) -> SizeProfile:
    """``counts[k]`` is the number of maximal matchings with ``k`` edges."""
    _check_cap(g, cap)
    return SizeProfile(_count_matchings(g, maximal=True))


def matching_profile(g: Graph, cap: int | None = DEFAULT_CAP) -> SizeProfile:
    """``counts[k]`` is the number of matchings with ``k`` edges (maximal or not)."""
    _check_cap(g, cap)
    return SizeProfile(_count_matchings(g, maximal=False))


def max_matching_size(g: Graph, cap: int | None = DEFAULT_CAP) -> int:
    return maximal_matching_profile(g, cap).top


def rg_expected_size(g: Graph, cap: int | None = DEFAULT_CAP) -> Fraction:
    """Expected size of the matching built by uniform random greedy edge picking.

    Uses mu(G) = (1/m) * sum over edges uv of (1 + mu(G - u - v)), memoized on
    the set of deleted vertices.
    """
    _check_cap(g, cap)
    edges = g.edges
    memo: dict[int, Fraction] = {}

    def mu(removed: int) -> Fraction:
        if removed in memo:
            return memo[removed]
        alive = [(u, v) for u, v in edges if not (removed >> u & 1 or removed >> v & 1)]
        if not alive:
            value = Fraction(0)
        else:
            total = Fraction(0)
            for u, v in alive:
                total += 1 + mu(removed | 1 << u | 1 << v)
            value = total / len(alive)
        memo[removed] = value
        return value

    return mu(0)


def ordered_maximal_matchings(g: Graph) -> Iterator[tuple[tuple[tuple[int, int], ...], int]]:
    """Every edge sequence random greedy can output, with its weight ``p(M)``.

    ``p(M)`` is the product of the edge counts seen at each step, so random
    greedy returns the sequence with probability ``1/p(M)``.  Exponential;
    meant for small graphs.
    """

    def walk(alive, seq, p):
        if not alive:
            yield tuple(seq), p
            return
        for u, v in alive:
            rest = [e for e in alive if u not in e and v not in e]
            seq.append((u, v))
            yield from walk(rest, seq, p * len(alive))
            seq.pop()

    yield from walk(list(g.edges), [], 1)


# --- invariant ratios ---------------------------------------------------


def ratio(t1: int, t0: int, nu: int) -> Fraction:
    """``t1 / (nu * t0)``, defined as 1 for ``nu == 0``."""
    if nu == 0:
        return Fraction(1)
    return Fraction(t1, nu * t0)


@dataclass(frozen=True)
class InvariantReport:
    nu: int
    t0: int
    t1: int
    i_avg: Fraction
    t0_ord: int
    t1_ord: int
    i_ord: Fraction
    t0_arw: int
    t1_arw: int
    i_arw: Fraction
    mu: Fraction
    i_df: Fraction

    RATIONAL_FIELDS = ("i_avg", "i_ord", "i_arw", "mu", "i_df")

    def to_json(self) -> dict:
        out: dict = {}
        for name in ("nu", "t0", "t1", "i_avg", "t0_ord", "t1_ord", "i_ord",
                     "t0_arw", "t1_arw", "i_arw", "mu", "i_df"):
            value = getattr(self, name)
            if isinstance(value, Fraction):
                out[name] = fraction_str(value)
                out[name + "_dec"] = float(value)
            else:
                out[name] = value
        return out


def fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def invariant_report(g: Graph, cap: int | None = DEFAULT_CAP) -> InvariantReport:
    prof = maximal_matching_profile(g, cap)
    nu = prof.top
    t0_ord = sum(math.factorial(k) * c for k, c in enumerate(prof.counts))
    t1_ord = sum(k * math.factorial(k) * c for k, c in enumerate(prof.counts))
    allm = matching_profile(g, cap)
    # the empty matching counts (2 matchings in K2, and needed for the thorn duality)
    t0_arw = allm.t0
    t1_arw = allm.t1
    mu = rg_expected_size(g, cap)
    if nu == 0:
        one = Fraction(1)
        i_avg = i_ord = i_arw = i_df = one
    else:
        i_avg = ratio(prof.t1, prof.t0, nu)
        i_ord = ratio(t1_ord, t0_ord, nu)
        i_arw = ratio(t1_arw, t0_arw, nu)
        i_df = mu / nu
    return InvariantReport(nu, prof.t0, prof.t1, i_avg, t0_ord, t1_ord, i_ord,
                           t0_arw, t1_arw, i_arw, mu, i_df)


# --- closed forms ---------------------------------------------------------


def clique_maximal_count(s: int) -> int:
    """Number of maximal matchings of K_s: s!! for odd s, (s-1)!! for even s.

    Returns 1 for s in {-1, 0} so coefficient formulas stay total at small s.
    """
    if s < -1:
        raise ValueError("s must be >= -1")
    top = s if s % 2 else s - 1
    out = 1
    while top > 1:
        out *= top
        top -= 2
    return out


def path_profile(n: int) -> SizeProfile:
    """Maximal-matching profile of P_n from S(P_n, k) = S(P_{n-2}, k-1) + S(P_{n-3}, k-1)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    profs = [SizeProfile((1,)), SizeProfile((1,)), SizeProfile((0, 1))]
    while len(profs) <= n:
        i = len(profs)
        profs.append((profs[i - 2] + profs[i - 3]).shifted(1))
    return profs[n]


def wheel_profile(n: int, path: SizeProfile | None = None) -> SizeProfile:
    """Profile of the wheel on ``n`` vertices (hub plus an (n-1)-cycle rim).

    ``path`` may supply the profile of P_{n-2} when it is already known.
    """
    if n < 4:
        raise ValueError("wheel needs n >= 4")
    if path is None:
        path = path_profile(n - 2)
    prof = path.scaled(n - 1).shifted(1)
    if n % 2:
        prof = prof + SizeProfile.from_dict({(n - 1) // 2: 2})
    return prof


def thorn_bipartite_profile(c: int, n: int) -> SizeProfile:
    """Profile of the thorn of K_{c,n}: i cross edges give size n + c - i."""
    if c < 0 or n < 0:
        raise ValueError("c and n must be >= 0")
    counts = {}
    for k in range(max(n, c), n + c + 1):
        counts[k] = (math.factorial(c) * math.factorial(n)
                     // (math.factorial(n + c - k) * math.factorial(k - n) * math.factorial(k - c)))
    return SizeProfile.from_dict(counts)

