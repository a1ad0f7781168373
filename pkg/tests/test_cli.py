import json
import math
import subprocess
import sys

import numpy as np
import pytest

from spdcmodes import export
from spdcmodes.cli import main
from spdcmodes.spectra import hg_spectrum, lg_spectrum, sweep_theta1


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# --- export ------------------------------------------------------------------

def test_lg_csv_round_trip(tmp_path):
    spec = lg_spectrum(0.3, 3)
    export.write_csv(spec, tmp_path / "s.csv")
    back = export.read_csv(tmp_path / "s.csv")
    assert back.basis == "lg" and back.l_max == 3
    np.testing.assert_array_equal(back.amplitudes, spec.amplitudes)


def test_hg_csv_round_trip(tmp_path):
    spec = hg_spectrum(0.3, (2, 3))
    export.write_csv(spec, tmp_path / "s.csv")
    back = export.read_csv(tmp_path / "s.csv")
    assert (back.m_max, back.n_max) == (2, 3)
    np.testing.assert_array_equal(back.amplitudes, spec.amplitudes)


@pytest.mark.parametrize("make", [lambda: lg_spectrum(0.3, 2, normalization="printed"),
                                  lambda: hg_spectrum(math.pi / 8, 2)])
def test_json_round_trip(tmp_path, make):
    spec = make()
    export.write_json(spec, tmp_path / "s.json")
    back = export.read_json(tmp_path / "s.json")
    np.testing.assert_array_equal(back.amplitudes, spec.amplitudes)
    assert (back.theta1, back.theta2, back.waists, back.normalization) == (
        spec.theta1, spec.theta2, spec.waists, spec.normalization)
    assert export.spectrum_json(back) == export.spectrum_json(spec)


def test_json_schema():
    doc = json.loads(export.spectrum_json(lg_spectrum(0.3, 1)))
    assert set(doc["meta"]) >= {"basis", "theta1", "theta2", "waists", "window", "version"}
    assert set(doc["entries"][0]) == {"index", "re", "im", "prob"}
    assert sum(e["prob"] for e in doc["entries"]) == pytest.approx(1.0)


def test_sweep_csv_round_trip(tmp_path):
    sweep = sweep_theta1([(1, 0), (-2, 1)], np.linspace(0, 1, 5))
    path = tmp_path / "w.csv"
    path.write_text(export.sweep_csv(sweep))
    back = export.read_sweep_csv(path)
    assert back.pairs == sweep.pairs
    np.testing.assert_array_equal(back.values, sweep.values)
    np.testing.assert_array_equal(back.thetas, sweep.thetas)


def test_read_csv_bad_header(tmp_path):
    path = tmp_path / "x.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        export.read_csv(path)


def test_svg_outputs_are_wellformed():
    import xml.etree.ElementTree as ET

    ET.fromstring(export.spectrum_svg(lg_spectrum(math.pi / 8, 2)))
    ET.fromstring(export.spectrum_svg(hg_spectrum(math.pi / 8, 1)))
    ET.fromstring(export.sweep_svg(sweep_theta1([(1, 0), (-1, 0)], np.linspace(0, 1, 4))))


# --- CLI ---------------------------------------------------------------------

def test_pump_command(capsys):
    code, out, _ = run(["pump", "--theta1-deg", "22.5"], capsys)
    assert code == 0
    doc = json.loads(out)
    lg = {t["l"]: t["re"] for t in doc["lg"]}
    assert lg[1] == pytest.approx(1 / math.sqrt(2))
    assert lg[-1] == pytest.approx(1 / math.sqrt(2))
    hg = {(t["m"], t["n"]): t["re"] for t in doc["hg"]}
    assert hg[(1, 0)] == pytest.approx(1.0)
    assert doc["success_probability"] == pytest.approx(0.5)


def test_degrees_and_radians_agree(capsys):
    _, a, _ = run(["spectrum", "--theta1-deg", "45", "--lmax", "2"], capsys)
    _, b, _ = run(["spectrum", "--theta1-rad", str(math.pi / 4), "--lmax", "2"], capsys)
    assert a == b


def test_spectrum_files_byte_identical(tmp_path, capsys):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        d.mkdir()
        argv = ["spectrum", "--basis", "hg", "--theta1-deg", "17", "--cap", "2",
                "--csv", str(d / "s.csv"), "--json", str(d / "s.json"), "--svg", str(d / "s.svg")]
        assert run(argv, capsys)[0] == 0
        outs.append([(d / f"s.{ext}").read_bytes() for ext in ("csv", "json", "svg")])
    assert outs[0] == outs[1]


def test_sweep_command(tmp_path, capsys):
    code, out, _ = run(["sweep", "--pair", "1,0", "--pair=-1,0", "--step-deg", "45"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "theta1,C2_1_0,C2_-1_0"
    assert len(lines) == 1 + 5


def test_output_dir_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("SPDCMODES_OUTPUT_DIR", str(tmp_path))
    assert run(["sweep", "--pair", "1,0", "--csv", "w.csv", "--svg", "w.svg"], capsys)[0] == 0
    assert (tmp_path / "w.csv").exists() and (tmp_path / "w.svg").exists()


def test_validate_subset(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, _, _ = run(["validate", "--suite", "pump", "--suite", "selection", "--report", str(report)], capsys)
    assert code == 0
    doc = json.loads(report.read_text())
    assert doc["passed"] and set(doc["suites"]) == {"pump", "selection"}


def test_validate_failure_exit_code(capsys, monkeypatch):
    from spdcmodes import validation

    monkeypatch.setitem(validation.SUITES, "pump", lambda: [{"name": "x", "passed": False}])
    assert run(["validate", "--suite", "pump"], capsys)[0] == 1


@pytest.mark.parametrize("argv", [
    ["spectrum", "--theta1-deg", "10", "--lmax", "0"],
    ["spectrum", "--theta1-deg", "10", "--wp", "-1"],
    ["spectrum", "--basis", "hg", "--theta1-deg", "10", "--cap", "40"],
    ["spectrum", "--theta1-deg", "nan"],
    ["sweep", "--pair", "1"],
    ["sweep"],
    ["sweep", "--pair", "1,0", "--step-deg", "0"],
])
def test_config_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err.startswith("error:")


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["spectrum"])
    assert info.value.code == 2


def test_degenerate_exit_code(capsys):
    code, _, err = run(["pump", "--theta1-deg", "0", "--theta2-deg", "0"], capsys)
    assert code == 3 and "polarization" in err


def test_io_error_exit_code(tmp_path, capsys):
    code, _, _ = run(["spectrum", "--theta1-deg", "10", "--csv", str(tmp_path / "missing" / "s.csv")], capsys)
    assert code == 4


def test_console_entry_point_subprocess():
    a = subprocess.run([sys.executable, "-m", "spdcmodes.cli", "spectrum", "--theta1-deg", "30"],
                       capture_output=True, text=True, check=True).stdout
    b = subprocess.run([sys.executable, "-m", "spdcmodes.cli", "spectrum", "--theta1-deg", "30"],
                       capture_output=True, text=True, check=True).stdout
    assert a == b and a.startswith("l_s,l_i,re,im,prob")
