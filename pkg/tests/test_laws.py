import pytest

from twistfrac import (
    ConePair,
    SeDataSet,
    SpDataSet,
    audit,
    check_se_laws,
    check_sp_laws,
    enumerate_se,
    enumerate_sp,
    validate_se,
)
from twistfrac.enumeration import Filters


def sp(l, n, g0, a, b, cones):
    return SpDataSet(l, n, g0, a, b, tuple(ConePair(k, m) for k, m in cones))


def se(l, two_n, g0, a, cones):
    return SeDataSet(l, two_n, g0, a, tuple(ConePair(k, m) for k, m in cones))


def by_law(reports):
    return {r.law: r for r in reports}


def test_sp_laws_hold_with_tight_order_cap():
    d = sp(8, 16, 0, 1, 7, [(1, 2)])  # n = 16 = 4g
    reports = by_law(check_sp_laws(d))
    assert all(r.holds for r in reports.values())
    assert d.n == 4 * 4


def test_sp_laws_hold_with_tight_coprime_cap():
    d = sp(1, 9, 0, 2, 2, [(5, 9)])  # n = 9 = 2g+1
    reports = by_law(check_sp_laws(d))
    assert all(r.holds for r in reports.values())
    assert d.n == 2 * 4 + 1


def test_sp_order_window_lower_bound_everywhere():
    for g in range(1, 13):
        for d in enumerate_sp(g):
            m = len(d.cones)
            assert 2 * g + m <= d.n * (2 * d.g0 + m)


def test_se_laws_hold_with_tight_wiman_cap():
    d = se(17, 18, 0, 7, [(1, 2), (13, 18)])  # 2n = 18 = 4g+2
    reports = by_law(check_se_laws(d))
    assert all(r.holds for r in reports.values())
    assert d.two_n == 4 * 4 + 2


def test_se_laws_hold_with_tight_essential_floor():
    d = se(2, 10, 0, 1, [(9, 10), (9, 10)])  # 2n = 10 = 2g+2
    reports = by_law(check_se_laws(d))
    assert all(r.holds for r in reports.values())
    assert d.two_n == 2 * 4 + 2


def test_se_parity_law_on_odd_exponent():
    d = se(5, 18, 0, 4, [(1, 2), (1, 18)])
    reports = by_law(check_se_laws(d))
    assert reports["se:odd-l-odd-n"].holds
    assert d.l % 2 == 1 and (d.two_n // 2) % 2 == 1


def test_law_reports_carry_witness_only_on_failure():
    d = sp(8, 16, 0, 1, 7, [(1, 2)])
    for report in check_sp_laws(d):
        assert report.holds and report.witness is None


def test_essential_floor_is_scoped_to_essential_sets():
    # Valid with g0 = 0 and three cones at full order 4: the essential
    # floor 2n >= 2g+2 does not apply, the general floor does.
    d = se(2, 4, 0, 1, [(1, 2), (1, 4), (3, 4)])
    report = validate_se(d)
    assert report.valid and report.genus == 2
    assert d.two_n < 2 * report.genus + 2
    reports = by_law(check_se_laws(d))
    assert reports["se:essential-order-floor"].holds
    assert reports["se:order-floor"].holds


def test_audit_small_range_is_clean():
    for g in range(1, 7):
        for kind in ("sp", "se"):
            result = audit(g, kind)
            assert result.clean
            assert result.checked == len(
                enumerate_sp(g) if kind == "sp" else enumerate_se(g))


def test_audit_rejects_bad_kind():
    with pytest.raises(ValueError):
        audit(3, "all")


def test_tightness_witnesses_exist():
    for g in range(1, 13):
        wide = enumerate_sp(g, Filters(exponent=(2 * g, 4 * g)))
        assert any(d.n == 4 * g for d in wide)
        se_wide = enumerate_se(g, Filters(exponent=(4 * g + 1, 4 * g + 2)))
        assert any(d.two_n == 4 * g + 2 for d in se_wide)
