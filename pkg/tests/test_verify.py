"""The inequality harness: individual checks and corpus runs."""

import json
from fractions import Fraction

import pytest

from nilprob.groups import catalog_get
from nilprob.structure import center, normal_subgroups, whole_group
from nilprob.verify import (
    ALL_CHECKS,
    CorpusConfig,
    MUST_HOLD_CHECKS,
    PROBE_CHECKS,
    check_center_recursion,
    check_class_characterization,
    check_gap_bound,
    check_npleqcp,
    check_series_bound,
    check_shift_monotonicity,
    check_submultiplicativity,
    default_corpus_names,
    gap_constant,
    gap_constant_tight,
    max_bad_series_length,
    run_corpus,
)


def normal_of_order(g, n):
    return next(h for h in normal_subgroups(g) if h.order == n)


def test_gap_constants():
    assert gap_constant(1) == Fraction(5, 8)
    assert gap_constant(2) == Fraction(13, 16)
    assert gap_constant_tight(1) == Fraction(1, 4)
    assert gap_constant_tight(2) == Fraction(5, 8)
    for k in range(1, 10):
        assert gap_constant(k) > gap_constant_tight(k)


def test_npleqcp_abelian_vacuous():
    s3 = catalog_get("S(3)")
    a3 = normal_of_order(s3, 3)
    out = check_npleqcp(s3, a3)
    assert len(out) == 1
    assert out[0].holds and out[0].rhs == 1
    assert out[0].params["vacuous"]


def test_npleqcp_s4_a4():
    s4 = catalog_get("S(4)")
    a4 = normal_of_order(s4, 12)
    out = check_npleqcp(s4, a4)
    assert len(out) == 4  # two cosets, shift pairs
    assert all(o.holds for o in out)
    assert all(o.rhs == Fraction(1, 3) for o in out)


def test_center_recursion_whole_group_examples():
    s3 = catalog_get("S(3)")
    out = check_center_recursion(s3, whole_group(s3), 2)
    assert len(out) == 1
    o = out[0]
    assert o.holds and o.lhs == Fraction(3, 4) and o.rhs == Fraction(3, 4)

    q8 = catalog_get("Q8")
    out = check_center_recursion(q8, whole_group(q8), 2)
    assert out[0].holds and out[0].lhs == 1 and out[0].rhs == 1


def test_center_recursion_central_subgroup_trivial_shifts():
    # for central H the trivial-shift instance has rhs exactly 1
    q8 = catalog_get("Q8")
    z = center(q8)
    out = check_center_recursion(q8, z, 1)
    trivial = next(o for o in out if o.params["shifts"] == [0, 0])
    assert trivial.rhs == 1 and trivial.holds


def test_class_characterization_examples():
    c6 = catalog_get("C(6)")
    o = check_class_characterization(c6, whole_group(c6), 1)
    assert o.holds and o.lhs == 1

    s3 = catalog_get("S(3)")
    a3 = normal_of_order(s3, 3)
    assert check_class_characterization(s3, a3, 1).holds

    o = check_class_characterization(s3, whole_group(s3), 3)
    assert o.holds
    assert o.lhs == Fraction(7, 8)  # below 1, and S3 is not nilpotent


def test_gap_bound_skips_low_class():
    c12 = catalog_get("C(12)")
    assert check_gap_bound(c12, whole_group(c12), 1) == []
    q8 = catalog_get("Q8")
    assert check_gap_bound(q8, whole_group(q8), 2) == []


def test_gap_bound_s3():
    s3 = catalog_get("S(3)")
    for k, value, tight_holds in [(1, Fraction(1, 2), False), (2, Fraction(3, 4), False)]:
        loose, tight = check_gap_bound(s3, whole_group(s3), k)
        assert loose.check_id == "gap_bound" and loose.holds
        assert loose.lhs == value
        assert tight.check_id == "gap_bound_tight"
        assert tight.holds == tight_holds


def test_gap_bound_sharp_at_q8():
    q8 = catalog_get("Q8")
    loose, tight = check_gap_bound(q8, whole_group(q8), 1)
    assert loose.lhs == loose.rhs == Fraction(5, 8)
    assert loose.holds and not tight.holds


def test_submultiplicativity_examples():
    s3 = catalog_get("S(3)")
    a3 = normal_of_order(s3, 3)
    o = check_submultiplicativity(s3, a3, whole_group(s3), 1)
    assert o.holds and o.lhs == Fraction(1, 2) and o.rhs == 1

    trivial = normal_of_order(s3, 1)
    o = check_submultiplicativity(s3, trivial, whole_group(s3), 1)
    assert o.holds and o.lhs == o.rhs == Fraction(1, 2)

    g = catalog_get("S(3)xS(3)")
    a3a3 = normal_of_order(g, 9)
    o = check_submultiplicativity(g, a3a3, whole_group(g), 1)
    assert o.holds and o.lhs == Fraction(1, 4) and o.rhs == 1


def test_submultiplicativity_requires_containment():
    s4 = catalog_get("S(4)")
    v4 = normal_of_order(s4, 4)
    a4 = normal_of_order(s4, 12)
    with pytest.raises(ValueError):
        check_submultiplicativity(s4, a4, v4, 1)


def test_shift_monotonicity_vacuous_for_abelian():
    s3 = catalog_get("S(3)")
    a3 = normal_of_order(s3, 3)
    out = check_shift_monotonicity(s3, a3, 1)
    assert len(out) == 1 and out[0].holds and out[0].params["vacuous"]


def test_shift_monotonicity_s4_a4():
    s4 = catalog_get("S(4)")
    a4 = normal_of_order(s4, 12)
    for k in (1, 2):
        out = check_shift_monotonicity(s4, a4, k)
        assert len(out) == 2 ** (k + 1)
        assert all(o.holds for o in out)
        trivial = next(o for o in out if o.params["shifts"] == [0] * (k + 1))
        assert trivial.lhs == trivial.rhs


def test_max_bad_series_length():
    k = 1
    assert max_bad_series_length(catalog_get("C(12)"), k)[0] == -1
    assert max_bad_series_length(catalog_get("C(1)"), k)[0] == -1

    r, chain = max_bad_series_length(catalog_get("S(3)"), k)
    assert r == 0
    assert [c.order for c in chain] == [6, 1]

    r, chain = max_bad_series_length(catalog_get("S(3)xS(3)"), k)
    assert r == 1
    assert [c.order for c in chain] == [36, 6, 1]

    # at k = 2 the S3 factors are still not nilpotent, so r stays 1
    assert max_bad_series_length(catalog_get("S(3)xS(3)"), 2)[0] == 1


def test_series_bound_examples():
    s3 = catalog_get("S(3)")
    loose, tight = check_series_bound(s3, 1)
    assert loose.holds
    assert abs(loose.rhs - 1.4747) < 1e-3  # ln(1/2)/ln(5/8)
    assert tight.holds  # 0 < ln(1/2)/ln(1/4) = 0.5

    g = catalog_get("S(3)xS(3)")
    loose, tight = check_series_bound(g, 1)
    assert loose.holds and abs(loose.rhs - 2.9497) < 1e-3
    assert not tight.holds and abs(tight.rhs - 1.0) < 1e-12

    assert check_series_bound(catalog_get("C(1)"), 1) == []


def test_run_corpus_empty():
    report = run_corpus(CorpusConfig(group_names=[]))
    assert report.must_hold_ok
    assert report.summary()["checks"] == 0


def test_run_corpus_collects_bad_definitions():
    cfg = CorpusConfig(group_names=["S(3)", "NotAGroupName"], ks=(1,))
    report = run_corpus(cfg)
    assert report.must_hold_ok
    assert any("NotAGroupName" in s["group"] for s in report.skipped)


def test_run_corpus_respects_order_cap():
    cfg = CorpusConfig(group_names=["C(100)"], ks=(1,), max_order=64)
    report = run_corpus(cfg)
    assert any(s["group"] == "C(100)" for s in report.skipped)


def test_run_corpus_small_is_clean():
    cfg = CorpusConfig(
        group_names=["S(3)", "Q8", "C(6)", "S(4)", "SL(2,3)"], ks=(1, 2),
        k_order_limits={},
    )
    report = run_corpus(cfg)
    assert report.must_hold_ok
    assert report.summary()["checks"] > 100
    # probes are the only failures, and they are collected as findings
    assert all(f.check_id in PROBE_CHECKS for f in report.findings)
    assert any(
        f.group == "S(3)" and f.check_id == "gap_bound_tight" and f.params["k"] == 2
        for f in report.findings
    )


def test_run_corpus_sharpness_witnesses():
    cfg = CorpusConfig(group_names=["S(3)", "Q8", "D(8)"], ks=(1, 2), k_order_limits={})
    report = run_corpus(cfg)
    sharp = {(s.group, s.check_id) for s in report.sharpness}
    assert ("Q8", "gap_bound") in sharp
    assert ("D(8)", "gap_bound") in sharp
    assert ("S(3)", "center_recursion") in sharp


def test_run_corpus_cyclic_subgroup_flag():
    cfg = CorpusConfig(group_names=["S(4)"], ks=(1,), include_cyclic_subgroups=True,
                       k_order_limits={})
    report = run_corpus(cfg)
    assert report.must_hold_ok
    cfg_plain = CorpusConfig(group_names=["S(4)"], ks=(1,), k_order_limits={})
    assert report.summary()["checks"] > run_corpus(cfg_plain).summary()["checks"]


def test_report_json_deterministic():
    cfg = CorpusConfig(group_names=["S(3)", "Q8"], ks=(1, 2), k_order_limits={})
    a = json.dumps(run_corpus(cfg).to_json(include_timing=False), sort_keys=True)
    b = json.dumps(run_corpus(cfg).to_json(include_timing=False), sort_keys=True)
    assert a == b


def test_report_schema():
    cfg = CorpusConfig(group_names=["S(3)"], ks=(1,), k_order_limits={})
    doc = run_corpus(cfg).to_json()
    assert set(doc) >= {"summary", "outcomes", "findings", "environment", "skipped"}
    assert doc["environment"]["budgets"]["shift_budget"] > 0
    for o in doc["outcomes"]:
        assert set(o) >= {"check", "group", "params", "lhs", "rhs", "holds"}
        assert o["check"] in ALL_CHECKS


def test_default_corpus_names():
    names = default_corpus_names()
    assert "S(3)xS(3)" in names
    assert "Q8" in names and "Heis(3)" in names
    assert "S(5)" not in names  # order 120 is over the cap
    assert len(names) > 100


def test_all_checks_partition():
    assert set(MUST_HOLD_CHECKS) | set(PROBE_CHECKS) == set(ALL_CHECKS)
    assert not set(MUST_HOLD_CHECKS) & set(PROBE_CHECKS)


def test_threaded_run_matches_serial():
    cfg_serial = CorpusConfig(group_names=["S(3)", "Q8", "A(4)"], ks=(1,), k_order_limits={})
    cfg_par = CorpusConfig(group_names=["S(3)", "Q8", "A(4)"], ks=(1,), k_order_limits={},
                           threads=2)
    a = json.dumps(run_corpus(cfg_serial).to_json(include_timing=False), sort_keys=True)
    b = json.dumps(run_corpus(cfg_par).to_json(include_timing=False), sort_keys=True)
    assert a == b
