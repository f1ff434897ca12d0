import pytest
from hypothesis import given, strategies as st

from mmprop import penetration as pen
from mmprop.errors import DomainError


def test_loss_equation_drywall_example():
    # 140 GHz, 3 m, 27 dBi horns: Pr chosen so the excess loss is 15.02 dB
    m = pen.PenetrationMeasurement(0.0, -45.93276902984138, 27.0, 27.0, 3.0, 140e9, "Drywall B", 14.5)
    assert pen.penetration_loss(m) == pytest.approx(15.02, abs=1e-9)


def test_loss_equation_reference_value():
    # 0 dBm, 1 m, 27 dBi each, Pr = -36.39 dBm -> 54 - 75.37034 + 36.39
    m = pen.PenetrationMeasurement(0.0, -36.39, 27.0, 27.0, 1.0, 140e9, "x", 1.0)
    assert pen.penetration_loss(m) == pytest.approx(15.01965606455187, abs=1e-9)


@given(st.floats(-20, 20), st.floats(-120, 0), st.floats(0, 40), st.floats(0, 40), st.floats(0.5, 50))
def test_loss_linear_in_powers(pt, pr, gt, gr, d):
    m = pen.PenetrationMeasurement(pt, pr, gt, gr, d, 140e9, "x", 1.0)
    m2 = pen.PenetrationMeasurement(pt + 1.0, pr, gt, gr, d, 140e9, "x", 1.0)
    assert pen.penetration_loss(m2) - pen.penetration_loss(m) == pytest.approx(1.0, abs=1e-9)


def test_cross_polarization_rejected():
    m = pen.PenetrationMeasurement(0.0, -40.0, 27.0, 27.0, 1.0, 140e9, "x", 1.0, polarization="V-H")
    with pytest.raises(DomainError):
        pen.penetration_loss(m)


@pytest.mark.parametrize("thick", [0.0, -1.0])
def test_thickness_must_be_positive(thick):
    with pytest.raises(DomainError):
        pen.avg_loss_per_cm(5.0, thick)
    with pytest.raises(DomainError):
        pen.PenetrationMeasurement(0.0, -40.0, 27.0, 27.0, 1.0, 140e9, "x", thick)


@pytest.mark.parametrize(
    "loss, thick, per_cm", [(15.02, 14.5, 1.04), (8.24, 0.6, 13.73), (16.2, 1.3, 12.46), (3.6, 1.2, 3.0)]
)
def test_avg_loss_per_cm(loss, thick, per_cm):
    assert pen.avg_loss_per_cm(loss, thick) == pytest.approx(per_cm, abs=0.005)


def test_reference_table_shape():
    rows = pen.reference_table()
    assert len(rows) == 11
    assert {r.frequency_ghz for r in rows} == {28.0, 73.0, 140.0}


def test_replay_round_trip():
    agg = {(r.material_name, r.frequency_hz): r for r in pen.aggregate_by_material(pen.replay_measurements())}
    for ref in pen.reference_table():
        got = agg[(ref.material_name, ref.frequency_hz)]
        assert got.loss_db == pytest.approx(ref.loss_db, abs=1e-9)
        assert not got.mixed_thickness


def test_aggregate_means_and_flags_mixed_thickness():
    base = dict(pt=0.0, gt=27.0, gr=27.0, distance_m=2.0, frequency_hz=140e9, material_name="Wood")
    ms = [
        pen.PenetrationMeasurement(pr_mut=-40.0, thickness_cm=2.0, **base),
        pen.PenetrationMeasurement(pr_mut=-42.0, thickness_cm=2.0, **base),
        pen.PenetrationMeasurement(pr_mut=-45.0, thickness_cm=3.0, **base),
    ]
    out = sorted(pen.aggregate_by_material(ms), key=lambda r: r.thickness_cm)
    assert [r.count for r in out] == [2, 1]
    assert all(r.mixed_thickness for r in out)
    assert out[0].loss_db == pytest.approx((pen.penetration_loss(ms[0]) + pen.penetration_loss(ms[1])) / 2)


@pytest.mark.parametrize(
    "name, cls",
    [("Clear glass C", "clear glass"), ("Drywall A", "drywall"), ("Drywall with Whiteboard", "drywall with whiteboard")],
)
def test_material_class(name, cls):
    assert pen.material_class(name) == cls


def test_trend_skips_single_frequency_classes():
    trend = {e.material_class: e for e in pen.frequency_trend(pen.reference_table())}
    assert trend["drywall with whiteboard"].skipped
    assert trend["drywall with whiteboard"].monotone_increasing is None
    assert trend["drywall"].monotone_increasing


def test_trend_detects_decrease():
    rows = [pen.MaterialResult("Tile", 28e9, 1.0, 5.0), pen.MaterialResult("Tile", 73e9, 1.0, 4.0)]
    (e,) = pen.frequency_trend(rows)
    assert e.monotone_increasing is False
