import math

import pytest
from hypothesis import given, strategies as st

from mmprop import linkbudget as lb
from mmprop import rfmath, sounder
from mmprop.errors import DomainError

SENSITIVITY = -24.77340095392414  # 54 + 20 log10(2^11) - 145


def test_nyu_budget_identity():
    b = lb.nyu_budget()
    assert b.rx_sensitivity == pytest.approx(SENSITIVITY, abs=1e-12)
    assert lb.max_measurable_pl(b) == pytest.approx(145.0, abs=1e-12)


def test_from_sounder_matches_default_config():
    b = lb.Budget.from_sounder(sounder.SounderConfig())
    assert lb.max_measurable_pl(b) == pytest.approx(145.0, abs=1e-12)


def test_missing_sensitivity():
    with pytest.raises(DomainError):
        lb.max_measurable_pl(lb.Budget())


def test_negative_processing_gain():
    with pytest.raises(DomainError):
        lb.Budget(processing_gain=-1.0)


@given(st.floats(-10, 30), st.floats(0, 40), st.floats(0, 40), st.floats(60, 200))
def test_calibration_round_trip(pt, gt, gr, target):
    b = lb.calibrated(target, lb.Budget(pt, gt, gr))
    assert lb.max_measurable_pl(b) == pytest.approx(target, abs=1e-9)


@given(st.floats(-10, 10))
def test_gain_trades_one_for_one(delta):
    b = lb.nyu_budget()
    b2 = lb.Budget(b.tx_power, b.tx_gain + delta, b.rx_gain, b.processing_gain, b.rx_sensitivity)
    assert lb.max_measurable_pl(b2) - lb.max_measurable_pl(b) == pytest.approx(delta, abs=1e-9)


@pytest.mark.parametrize("ple, dist", [(2.0, 3030.280305307121), (4.3, 41.61925741196058)])
def test_max_distance_reference(ple, dist):
    assert lb.max_distance(145.0, 140e9, ple) == pytest.approx(dist, rel=1e-12)


@given(st.floats(80, 200), st.floats(1.0, 6.0))
def test_max_distance_inverts_ci(pl, n):
    d = lb.max_distance(pl, 140e9, n)
    assert rfmath.fspl_db(140e9, 1.0) + 10 * n * math.log10(d) == pytest.approx(pl, abs=1e-9)


def test_no_coverage():
    with pytest.raises(DomainError, match="no coverage"):
        lb.max_distance(60.0, 140e9, 2.0)


def test_bad_ple():
    with pytest.raises(DomainError):
        lb.max_distance(145.0, 140e9, 0.0)


def test_coverage_table():
    rows = lb.coverage_table(lb.nyu_budget(), 140e9)
    assert [r["ple"] for r in rows] == [2.0, 3.0, 4.3]
    dists = [r["max_distance_m"] for r in rows]
    assert dists == sorted(dists, reverse=True)


def test_sounder_table_entries():
    assert lb.SOUNDER_TABLE["nyu-140"]["dynamic_range_db"] == 145.0
    assert lb.SOUNDER_TABLE["aalto-140"]["dynamic_range_db"] == 130.0
    assert lb.SOUNDER_TABLE["gatech-dband"]["dynamic_range_db"] == 90.0
