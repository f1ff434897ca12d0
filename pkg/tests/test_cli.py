import json
import subprocess
import sys

import pytest

from mmprop import campaign_io, plfit, sounder
from mmprop.cli import cli_dispatch

FSPL_REC = str(campaign_io.data_path("fspl_verification.csv"))
MUT_REC = str(campaign_io.data_path("table2_replay.csv"))
CONF = str(campaign_io.data_path("example.conf"))


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_fspl_json(capsys):
    code, out, _ = run(capsys, "fspl", "--freq-ghz", "140", "--dist-m", "1,5", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert rows[0]["fspl_db"] == pytest.approx(75.37034393544813, abs=1e-9)
    assert rows[1]["fspl_db"] == pytest.approx(89.34974402216851, abs=1e-9)


def test_fspl_atmosphere_table(capsys):
    code, out, _ = run(capsys, "fspl", "--freq-ghz", "140", "--dist-m", "1000", "--atmosphere")
    assert code == 0 and "atmos_excess_db" in out and "0.80" in out


def test_fspl_out_of_table(capsys):
    code, _, err = run(capsys, "fspl", "--freq-ghz", "900", "--dist-m", "10", "--atmosphere")
    assert code == 3 and "error" in err


def test_usage_errors(capsys):
    assert run(capsys, "fspl", "--freq-ghz", "abc", "--dist-m", "1")[0] == 2
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "sound", "--noiseless", "--noise-dbm", "-60")[0] == 2


def test_budget(capsys):
    code, out, _ = run(capsys, "budget", "--config", CONF, "--ple", "2", "--format", "csv")
    assert code == 0
    assert "max measurable path loss: 145.00 dB" in out
    assert "3030.28" in out


def test_budget_no_coverage(capsys):
    code, _, err = run(capsys, "budget", "--freq-ghz", "1000000", "--ple", "2")
    assert code == 3 and "no coverage" in err


def test_fit_free_space(capsys):
    code, out, err = run(capsys, "fit", FSPL_REC, "--format", "json")
    assert code == 0
    rows = {r["model"]: r for r in json.loads(out)}
    assert rows["CI"]["ple"] == pytest.approx(2.0, abs=1e-9)
    assert rows["CI"]["sigma"] == pytest.approx(0.0, abs=1e-9)


def test_fit_degenerate(tmp_path, capsys):
    recs = campaign_io.free_space_records(freqs_ghz=(140.0,), distances_m=(1.0,))
    campaign_io.write_records(recs, tmp_path / "one.csv")
    code, _, err = run(capsys, "fit", str(tmp_path / "one.csv"))
    assert code == 4 and "no model" in err


def test_fit_bad_records(tmp_path, capsys):
    p = tmp_path / "bad.csv"
    p.write_text(",".join(campaign_io.RECORD_COLUMNS) + "\n140,-1,0,-30,27,27,LOS,,,V-V\n")
    code, _, err = run(capsys, "fit", str(p))
    assert code == 3 and "line 2" in err


def test_fit_bootstrap_writes_file(tmp_path, capsys):
    s = plfit.synth_samples("CI", plfit.CiParams(3.0, 0.0), [28e9, 140e9], [1, 3, 9, 20], 3.0, seed=1)
    recs = [
        campaign_io.MeasurementRecord(x.frequency_hz / 1e9, x.distance_m, 0.0, 54.0 - x.path_loss_db, 27.0, 27.0, "NLOS")
        for x in s
    ]
    campaign_io.write_records(recs, tmp_path / "r.csv")
    out_path = tmp_path / "fit.csv"
    code, out, _ = run(capsys, "fit", str(tmp_path / "r.csv"), "--bootstrap", "20", "--out", str(out_path))
    assert code == 0 and out_path.read_text().startswith("model,")
    assert "ple_std" in out_path.read_text()


def test_fit_unwritable_output(tmp_path, capsys):
    code, _, _ = run(capsys, "fit", FSPL_REC, "--out", str(tmp_path / "no" / "dir.csv"))
    assert code == 6


def test_penetrate(capsys):
    code, out, _ = run(capsys, "penetrate", MUT_REC, "--format", "csv")
    assert code == 0
    assert "trend clear glass" in out and "increasing" in out
    assert "Drywall B,140,14.5,15.02,1.04" in out


def test_penetrate_without_mut(capsys):
    assert run(capsys, "penetrate", FSPL_REC)[0] == 3


def test_sound_two_path(tmp_path, capsys):
    ch = sounder.ChannelSpec((sounder.Tap(0.0, 0.0, 0.0, 0), sounder.Tap(10e-9, -6.0, 1.0, 1)), 100.0)
    ch.save(tmp_path / "ch.csv")
    code, out, _ = run(
        capsys, "sound", "--channel", str(tmp_path / "ch.csv"), "--noiseless", "--pdp-out", str(tmp_path / "pdp.csv")
    )
    assert code == 0
    assert "2 tap(s)" in out
    assert "10.000 ns" in out
    assert sounder.PowerDelayProfile.load(tmp_path / "pdp.csv").slide_factor == 8000


def test_sound_below_sensitivity(capsys):
    code, _, err = run(capsys, "sound", "--path-loss-db", "150", "--seed", "3")
    assert code == 5 and "detection level" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mmprop", "fspl", "--freq-ghz", "28", "--dist-m", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0 and "fspl_db" in proc.stdout
