import io
import json
import subprocess
import sys

import numpy as np
import pytest

from stableharm.cli import main, parse_complex
from stableharm.series import PowerSeries


def run(argv, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "stableharm", *argv],
        input=stdin,
        capture_output=True,
        text=True,
    )
    return proc.returncode, proc.stdout, proc.stderr


def call(argv):
    out = io.StringIO()
    code = main(argv, out)
    return code, out.getvalue()


@pytest.fixture(scope="module")
def k_json(tmp_path_factory):
    path = tmp_path_factory.mktemp("maps") / "K.json"
    code, text = call(["catalog", "K", "--order", "16"])
    assert code == 0
    path.write_text(text)
    return path


def test_parse_complex():
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("-0.5") == -0.5
    assert parse_complex("i") == 1j
    z = parse_complex("1@1.5707963267948966")
    assert abs(z - 1j) < 1e-15


def test_catalog_csv():
    code, text = call(["catalog", "K", "--order", "4", "--format", "csv"])
    lines = text.strip().splitlines()
    assert code == 0
    assert lines[0] == "n,a_n,b_n"
    assert lines[3] == "2,2.5,0.5"
    assert len(lines) == 6


def test_catalog_v_requires_parameters():
    assert call(["catalog", "V"])[0] == 1
    code, text = call(["catalog", "V", "--n", "3", "--alpha", "0.2", "--order", "8"])
    assert code == 0 and json.loads(text)["class"] == "H0"


def test_bohr_radius_command():
    code, text = call(["bohr-radius", "--profile", "S_STAR"])
    data = json.loads(text)
    assert code == 0 and abs(data["radius"] - 0.115013) < 1e-6
    code, text = call(["bohr-radius", "--profile", "C_STABLE"])
    assert abs(json.loads(text)["radius"] - 1 / 3) < 1e-10


def test_slice_with_zero_is_h(k_json):
    code, text = call(["slice", str(k_json), "--eps", "0"])
    K = json.loads(k_json.read_text())
    assert code == 0 and json.loads(text) == K["h"]


def test_roundtrip_pipeline():
    _, K = run(["catalog", "K"])[:2]
    code, rotated, _ = run(["rotate", "-", "--eps=-1"], K)
    assert code == 0
    code, lhs, _ = run(["slice", "-", "--eps", "1"], rotated)
    code2, rhs, _ = run(["slice", "-", "--eps=-1"], K)
    assert code == code2 == 0
    assert lhs == rhs
    koebe = PowerSeries.from_json(json.loads(lhs))
    assert np.allclose(koebe.coeffs, np.arange(65), atol=1e-9)


def test_transform_commands(k_json):
    code, text = call(["transform", str(k_json), "--affine", "0.2+0.1i"])
    assert code == 0 and json.loads(text)["class"] == "H"
    code, text = call(["transform", str(k_json), "--auto", "0.3+0.1i,0.5"])
    assert code == 0 and json.loads(text)["class"] == "H"
    assert call(["transform", str(k_json), "--auto", "0.9,0"])[0] == 1


def test_bounds_and_tables(k_json):
    code, text = call(["bounds-check", str(k_json), "--profile", "S_STAR", "--upto", "16"])
    assert code == 0 and json.loads(text)["verdict"] == "pass"
    code, text = call(["growth-table", "--alpha", "2", "--radii", "0.1,0.5"])
    rows = text.strip().splitlines()
    assert code == 0 and rows[0].startswith("r,lower,upper")
    lo, hi = map(float, rows[2].split(",")[1:3])
    assert lo == pytest.approx(0.5 / 1.5**2) and hi == pytest.approx(0.5 / 0.5**2)
    code, text = call(["distortion-table", "--alpha", "2", "--b1", "0.3", "--radii", "0,0.5", "--variant", "STABLE_MIN"])
    assert code == 0 and len(text.strip().splitlines()) == 3


def test_bohr_check_command(k_json):
    code, text = call(["bohr-check", str(k_json), "--profile", "S_STAR", "--r", "0.05"])
    assert code == 0 and json.loads(text)["verdict"] == "pass"


def test_stability_table_command(tmp_path):
    path = tmp_path / "L.json"
    path.write_text(call(["catalog", "L"])[1])
    code, text = call(["stability-table", str(path), "--eps-circle", "4"])
    rows = text.strip().splitlines()
    assert code == 0 and rows[0] == "eps_re,eps_im,univalent,convex,witness"
    assert rows[1].split(",")[3] == "pass"  # eps = 1
    assert call(["stability-table", str(path)])[0] == 1


def test_deterministic_output(k_json):
    a = run(["transform", str(k_json), "--auto", "0.5@1,0.2"])
    b = run(["transform", str(k_json), "--auto", "0.5@1,0.2"])
    assert a == b and a[0] == 0


def test_exit_codes(tmp_path):
    assert run(["nonsense"])[0] == 2
    assert run(["catalog", "K", "--bogus"])[0] == 2
    assert run(["catalog", "K", "--order", "0"])[0] == 2
    code, _, err = run(["bohr-radius", "--profile", "X"])
    assert code == 1 and "unknown profile" in err
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"order": 1, "coeffs": [[0, 0], [1, 0]]}))
    assert run(["slice", str(bad), "--eps", "1"])[0] == 1
    assert run(["slice", str(tmp_path / "missing.json"), "--eps", "1"])[0] == 1
    code, _, err = run(["rotate", "-", "--eps", "2"], run(["catalog", "K", "--order", "4"])[1])
    assert code == 1 and "outside closed disk" in err
