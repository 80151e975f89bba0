"""Linear recurrences on size profiles and their asymptotic ratio.

A recurrence has the shape

    S(G_n, k) = sum over (i, j, a) of a * S(G_{n-i}, k-j)

with lags ``1 <= i <= depth``.  Profiles are extended exactly with Python
integers; only the root finding and the limit formula use floats.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import DEFAULT_CAP, SizeProfile, maximal_matching_profile

ROOT_TOL = 1e-12
DOMINANCE_GAP = 1e-9
BASE_TOL = 1e-9


class HypothesisError(ValueError):
    """A precondition of the dominant-root limit formula does not hold."""

    def __init__(self, message: str, report: dict | None = None):
        super().__init__(message)
        self.report = report or {}


class NonUniqueDominantRoot(HypothesisError):
    pass


class ComplexDominantRoot(HypothesisError):
    pass


class BaseConditionError(HypothesisError):
    pass


class MissingBaseError(ValueError):
    pass


@dataclass(frozen=True)
class RecurrenceSpec:
    """Coefficients ``(i, j, a)`` plus ``depth`` consecutive base profiles.

    ``base_profiles[t]`` is the profile of ``G_{n_min + t}``; the recurrence
    produces every index from ``n_min + depth`` on.  ``conventional`` marks
    bases that belong to no actual graph.
    """

    key: str
    coeffs: tuple[tuple[int, int, int | Fraction], ...]
    base_profiles: tuple[SizeProfile, ...]
    n_min: int = 0
    c: Fraction = Fraction(1)
    conventional: bool = False
    notes: str = ""
    depth: int = field(init=False)

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError(f"{self.key}: empty coefficient table")
        for i, j, a in self.coeffs:
            if i < 1 or j < 0:
                raise ValueError(f"{self.key}: bad term ({i}, {j}, {a})")
        depth = max(i for i, _, a in self.coeffs if a != 0)
        object.__setattr__(self, "depth", depth)


def alpha_beta(spec: RecurrenceSpec) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """``alpha_i = sum_j a_ij`` and ``beta_i = sum_j j * a_ij`` for ``i = 1..depth``."""
    alpha = [Fraction(0)] * spec.depth
    beta = [Fraction(0)] * spec.depth
    for i, j, a in spec.coeffs:
        alpha[i - 1] += a
        beta[i - 1] += j * a
    return tuple(alpha), tuple(beta)


def characteristic_roots(alpha: Sequence[Fraction | float]) -> list[complex]:
    """Roots of ``x^D - alpha_1 x^(D-1) - ... - alpha_D``.

    Companion-matrix eigenvalues, then a few Newton steps per root.  A step
    is kept only if it lowers the residual, so clustered roots stay put.
    """
    coeffs = [1.0] + [-float(a) for a in alpha]
    if len(coeffs) == 1:
        return []
    poly = np.poly1d(coeffs)
    dpoly = poly.deriv()
    roots = []
    for z in np.roots(coeffs):
        z = complex(z)
        res = abs(poly(z))
        for _ in range(8):
            d = dpoly(z)
            if d == 0:
                break
            cand = z - poly(z) / d
            cres = abs(poly(cand))
            if cres >= res:
                break
            z, res = complex(cand), cres
        if abs(z.imag) < ROOT_TOL * max(1.0, abs(z)):
            z = complex(z.real, 0.0)
        roots.append(z)
    roots.sort(key=lambda z: (-abs(z), -z.real, z.imag))
    return roots


def dominant_root(roots: Sequence[complex]) -> float:
    """The unique root of largest modulus, which must be (numerically) real."""
    if not roots:
        raise NonUniqueDominantRoot("no roots")
    ordered = sorted(roots, key=abs, reverse=True)
    top = ordered[0]
    if len(ordered) > 1:
        gap = (abs(top) - abs(ordered[1])) / abs(top) if abs(top) else 0.0
        if gap < DOMINANCE_GAP:
            raise NonUniqueDominantRoot(
                f"roots {top:.12g} and {ordered[1]:.12g} share the largest modulus")
    if abs(top.imag) > DOMINANCE_GAP:
        raise ComplexDominantRoot(f"dominant root {top:.12g} is not real")
    return top.real


def base_condition_check(spec: RecurrenceSpec, r: float) -> tuple[float, bool]:
    """Value of ``sum_i r^-i (T0(G_i) - sum_{j<=i} alpha_j T0(G_{i-j}))``.

    The bases are re-indexed from ``n_min`` to 0; the value is nonzero exactly
    when the generating function keeps its pole at ``1/r``, which does not
    depend on where the index starts.
    """
    if len(spec.base_profiles) < spec.depth:
        raise MissingBaseError(f"{spec.key}: need {spec.depth} base profiles, have {len(spec.base_profiles)}")
    alpha, _ = alpha_beta(spec)
    t0 = [p.t0 for p in spec.base_profiles[:spec.depth]]
    value = 0.0
    for i in range(spec.depth):
        term = t0[i] - sum(float(alpha[j - 1]) * t0[i - j] for j in range(1, i + 1))
        value += term / r ** i
    return value, abs(value) > BASE_TOL


@dataclass(frozen=True)
class AsymptoticResult:
    alpha: tuple[Fraction, ...]
    beta: tuple[Fraction, ...]
    dominant_root: float | None
    all_roots: tuple[complex, ...]
    limit: float
    hypothesis_report: dict

    def to_json(self) -> dict:
        return {
            "alpha": [str(a) for a in self.alpha],
            "beta": [str(b) for b in self.beta],
            "dominant_root": self.dominant_root,
            "all_roots": [[z.real, z.imag] for z in self.all_roots],
            "limit": self.limit,
            "hypothesis_report": self.hypothesis_report,
        }


def asymptotic_limit(spec: RecurrenceSpec, c: Fraction | float | None = None) -> AsymptoticResult:
    """``lim I(G_n) = sum beta_i r^(D-i) / (c * sum i alpha_i r^(D-i))``."""
    if c is None:
        c = spec.c
    alpha, beta = alpha_beta(spec)
    roots = characteristic_roots(alpha)
    report = {"root_unique": False, "multiplicity_one": False, "p_nonzero": False, "p_value": None}
    try:
        r = dominant_root(roots)
    except NonUniqueDominantRoot as exc:
        exc.report = report
        raise
    except ComplexDominantRoot as exc:
        report.update(root_unique=True, multiplicity_one=True)
        exc.report = report
        raise
    report.update(root_unique=True, multiplicity_one=True)
    p_value, ok = base_condition_check(spec, r)
    report.update(p_nonzero=ok, p_value=p_value)
    if not ok:
        raise BaseConditionError(f"{spec.key}: base condition vanishes ({p_value:.3g})", report)
    D = spec.depth
    num = sum(float(beta[i - 1]) * r ** (D - i) for i in range(1, D + 1))
    den = float(c) * sum(i * float(alpha[i - 1]) * r ** (D - i) for i in range(1, D + 1))
    return AsymptoticResult(alpha, beta, r, tuple(roots), num / den, report)


def profile_sequence(spec: RecurrenceSpec, n_max: int) -> list[SizeProfile]:
    """Profiles for ``n_min .. n_max`` (list position ``t`` is index ``n_min + t``)."""
    if n_max < spec.n_min:
        raise ValueError(f"{spec.key}: n={n_max} is below the first base index {spec.n_min}")
    if len(spec.base_profiles) < spec.depth:
        raise MissingBaseError(f"{spec.key}: need {spec.depth} base profiles")
    seq = [list(p.counts) for p in spec.base_profiles[:spec.depth]]
    exact_ints = all(isinstance(a, int) or Fraction(a).denominator == 1 for _, _, a in spec.coeffs)
    terms = [(i, j, int(a) if exact_ints else Fraction(a)) for i, j, a in spec.coeffs if a != 0]
    for t in range(spec.depth, n_max - spec.n_min + 1):
        size = max(len(seq[t - i]) + j for i, j, _ in terms)
        out = [0] * size
        for i, j, a in terms:
            for k, v in enumerate(seq[t - i]):
                if v:
                    out[k + j] += a * v
        seq.append(out)
    return [SizeProfile(tuple(p)) for p in seq[: n_max - spec.n_min + 1]]


def extend_profiles(spec: RecurrenceSpec, n_target: int) -> SizeProfile:
    """Exact profile of ``G_{n_target}`` by iterating the recurrence forward."""
    return profile_sequence(spec, n_target)[-1]


def finite_ratio(profile: SizeProfile, nu: int) -> Fraction:
    """``T1 / (nu * T0)``; 1 when ``nu == 0``."""
    if nu == 0:
        return Fraction(1)
    return Fraction(profile.t1, nu * profile.t0)


# --- verification against enumeration -----------------------------------


@dataclass
class VerificationRow:
    n: int
    predicted: SizeProfile
    enumerated: SizeProfile

    @property
    def match(self) -> bool:
        return self.predicted == self.enumerated


@dataclass
class VerificationReport:
    key: str
    rows: list[VerificationRow]

    @property
    def passed(self) -> bool:
        return all(row.match for row in self.rows)

    @property
    def mismatches(self) -> list[VerificationRow]:
        return [row for row in self.rows if not row.match]

    def to_json(self) -> dict:
        return {
            "key": self.key,
            "passed": self.passed,
            "rows": [
                {"n": r.n, "match": r.match, "predicted": r.predicted.as_dict(),
                 "enumerated": r.enumerated.as_dict()}
                for r in self.rows
            ],
        }


def _enumerate_member(args):
    family_id, params, n, cap = args
    from .families import generate

    return maximal_matching_profile(generate(family_id, params, n), cap)


def verify_recurrence(spec: RecurrenceSpec, family_id: str, params: dict | None,
                      n_range: Sequence[int], cap: int | None = DEFAULT_CAP,
                      workers: int = 1) -> VerificationReport:
    """Compare recurrence-predicted profiles with enumerated ones for each n.

    Indices inside the base window compare the stored base profile itself.
    """
    ns = sorted(set(n_range))
    if not ns:
        return VerificationReport(spec.key, [])
    predicted = profile_sequence(spec, max(ns))
    jobs = [(family_id, params or {}, n, cap) for n in ns]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            enumerated = list(pool.map(_enumerate_member, jobs))
    else:
        enumerated = [_enumerate_member(job) for job in jobs]
    rows = [VerificationRow(n, predicted[n - spec.n_min], prof) for n, prof in zip(ns, enumerated)]
    return VerificationReport(spec.key, rows)


def root_residual(alpha: Sequence[Fraction], z: complex) -> float:
    D = len(alpha)
    return abs(z ** D - sum(float(alpha[i - 1]) * z ** (D - i) for i in range(1, D + 1)))

