import json
import math

import pytest

from maxmatch.catalog import (CatalogError, catalog, catalog_json, clique_link_spec, clique_pendant_spec,
                              entry_limit, evaluate_closed_form, lookup, profile_at, profiles_upto,
                              verify_entry)
from maxmatch.exact import clique_maximal_count as f
from maxmatch.exact import maximal_matching_profile
from maxmatch.families import generate
from maxmatch.recurrence import alpha_beta, finite_ratio, root_residual

ENTRIES = catalog()
RECURRENT = [e for e in ENTRIES if e.spec is not None]


def ids(e):
    return e.key.replace(" ", "-")


@pytest.mark.parametrize("entry", ENTRIES, ids=ids)
def test_entry_matches_enumeration(entry):
    report = verify_entry(entry)
    assert report.passed, report.mismatches
    assert len(report.rows) >= 4


@pytest.mark.parametrize("entry", ENTRIES, ids=ids)
def test_limit_matches_closed_form(entry):
    result = entry_limit(entry)
    assert abs(result.limit - evaluate_closed_form(entry.closed_form, result.dominant_root)) <= 1e-10


@pytest.mark.parametrize("entry", ENTRIES, ids=ids)
def test_limit_in_half_open_interval(entry):
    assert 0.5 < entry_limit(entry).limit <= 1


@pytest.mark.parametrize("entry", RECURRENT, ids=ids)
def test_root_residual(entry):
    result = entry_limit(entry)
    r, depth = result.dominant_root, entry.spec.depth
    assert root_residual(result.alpha, r) <= 1e-10 * max(1.0, abs(r) ** depth)
    assert result.hypothesis_report == {**result.hypothesis_report, "root_unique": True,
                                        "multiplicity_one": True, "p_nonzero": True}


def test_closed_form_roots():
    assert abs(entry_limit(lookup("c4-chain", {"s": 2})).dominant_root - (3 + math.sqrt(17)) / 2) <= 1e-12
    assert abs(entry_limit(lookup("clique-pendant-chain", {"s": 1})).dominant_root
               - (1 + math.sqrt(5)) / 2) <= 1e-12
    assert entry_limit(lookup("trees")).dominant_root == 3


def test_path_cycle_wheel_agree():
    values = [entry_limit(lookup(fid)).limit for fid in ("path", "cycle", "wheel")]
    assert max(values) - min(values) <= 1e-10


def test_thorn_cycle_thorn_path_agree():
    assert abs(entry_limit(lookup("thorn-cycle")).limit - entry_limit(lookup("thorn-path")).limit) <= 1e-10


@pytest.mark.parametrize("s", [1, 2, 3, 4, 5])
def test_clique_pendant_coefficients(s):
    alpha, _ = alpha_beta(clique_pendant_spec(s))
    assert alpha[0] == f(s - 1) + (s - 1) * f(s - 2)
    assert alpha[1] == f(s - 1) ** 2
    r = entry_limit(lookup("clique-pendant-chain", {"s": s})).dominant_root
    assert abs(r - (alpha[0] + math.sqrt(alpha[0] ** 2 + 4 * alpha[1])) / 2) <= 1e-12 * r


@pytest.mark.parametrize("s", range(2, 9))
def test_clique_link_bases(s):
    spec = clique_link_spec(s)
    for n, base in enumerate(spec.base_profiles):
        if s * n <= 26:
            assert base == maximal_matching_profile(generate("clique-link-chain", {"s": s}, n))


@pytest.mark.parametrize("s", range(1, 9))
def test_clique_pendant_bases(s):
    for n, base in enumerate(clique_pendant_spec(s).base_profiles):
        assert base == maximal_matching_profile(generate("clique-pendant-chain", {"s": s}, n))


@pytest.mark.parametrize("fid, s, n_max", [("clique-pendant-chain", 6, 3), ("clique-pendant-chain", 7, 3),
                                           ("clique-link-chain", 7, 3), ("clique-link-chain", 8, 3)])
def test_parametric_lookup_beyond_catalog(fid, s, n_max):
    entry = lookup(fid, {"s": s})
    assert verify_entry(entry, (0, n_max)).passed
    result = entry_limit(entry)
    assert abs(result.limit - evaluate_closed_form(entry.closed_form, result.dominant_root)) <= 1e-10
    assert 0.5 < result.limit <= 1


def test_lookup_errors_and_aliases():
    assert lookup("trees") is lookup("caterpillar-tree")
    with pytest.raises(CatalogError):
        lookup("complete")
    assert lookup("thorn-complete-bipartite", {"c": 5}).rule == "thorn-complete-bipartite"


def test_conventional_cycle_bases_flagged():
    cycle = lookup("cycle")
    assert cycle.spec.conventional
    assert [b.t0 for b in cycle.spec.base_profiles] == [3, 0, 2]
    assert not lookup("path").spec.conventional


def test_catalog_json_is_auditable():
    doc = catalog_json()
    assert json.loads(json.dumps(doc)) == doc
    assert len(doc) == len(ENTRIES)
    first = doc[0]
    assert {"depth", "coeffs", "base_profiles", "n_min", "c", "closed_form_limit", "notes"} <= set(first)
    assert first["coeffs"] == [[2, 1, "1"], [3, 1, "1"]]


def test_profiles_upto_rejects_low_index():
    with pytest.raises(ValueError):
        profiles_upto(lookup("cycle"), 2)


@pytest.mark.parametrize("entry", ENTRIES, ids=ids)
def test_gap_shrinks_from_50_to_200(entry):
    limit = entry_limit(entry).limit
    profiles = profiles_upto(entry, 200)
    gap = {n: abs(float(finite_ratio(profiles[n], entry.family.nu_of(n))) - limit) for n in (50, 200)}
    # cycle-like families sit on the limit to rounding already at n = 50
    assert gap[200] < gap[50] or gap[50] <= 1e-15


@pytest.mark.parametrize("entry", ENTRIES, ids=ids)
def test_gap_decays_like_one_over_n(entry):
    """Doubling n halves the gap, and 2 I(G_2n) - I(G_n) removes it."""
    limit = entry_limit(entry).limit
    profiles = profiles_upto(entry, 800)

    def value(n):
        return float(finite_ratio(profiles[n], entry.family.nu_of(n)))

    g400, g800 = value(400) - limit, value(800) - limit
    if abs(g400) > 1e-12:
        assert abs(g800 / g400 - 0.5) < 0.01
    # what is left after extrapolation is second order
    assert abs(2 * value(800) - value(400) - limit) < 0.01 * abs(g400) + 1e-12


def test_profile_at_matches_direct_generation():
    entry = lookup("thorn-complete-bipartite", {"c": 2})
    assert profile_at(entry, 4) == maximal_matching_profile(generate("thorn-complete-bipartite", {"c": 2}, 4))
