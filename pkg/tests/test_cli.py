from __future__ import annotations

import json
import subprocess
import sys

import jsonschema
import pytest

from cliffps import schema
from cliffps.cli import main, parse_region
from cliffps.config import ValidationError


def run(*args) -> int:
    return main([str(a) for a in args])


def test_schema_flag(capsys):
    assert run("--schema") == 0
    obj = json.loads(capsys.readouterr().out)
    assert obj["version"] == schema.SCHEMA_VERSION
    assert obj["color_ramp"]["steps"] == 256


def test_parse_region():
    r = parse_region("-2:2^2", "5")
    assert r.lo == (-2, -2) and r.resolution == (5, 5)
    r = parse_region("-1:1,0:2", "3,4")
    assert r.hi == (1, 2) and r.resolution == (3, 4)
    with pytest.raises(ValidationError):
        parse_region("-1;1", "3")


def test_scan_two_projection_writes_valid_outputs(tmp_path, capsys):
    out = tmp_path / "tp"
    assert run("scan", "--zoo", "two_projection", "--z", "0.5", "--region", "-2:2^2", "--res", 21, "--which", "c,q", "--out", out) == 0
    assert {p.name for p in out.iterdir()} == {"grid.csv", "grid.json", "heatmap.svg"}
    obj = json.loads((out / "grid.json").read_text())
    jsonschema.validate(obj, schema.GRID)
    assert obj["meta"]["spec"] == {"kind": "two_projection", "params": {"z": 0.5}}
    assert (out / "heatmap.svg").read_text().startswith("<svg")
    assert "441 points" in capsys.readouterr().out


def test_scan_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["scan", "--zoo", "hemisphere", "--n-trunc", 32, "--axes", "0,2", "--region", "-1:1,0:1.5", "--res", "9,7"]
    assert run(*args, "--out", a) == 0
    assert run(*args, "--out", b, "--workers", 2) == 0
    for name in ("grid.csv", "grid.json", "heatmap.svg"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_scan_universal_pair_and_pauli_montage(tmp_path):
    assert run("scan", "--zoo", "universal_pair", "--res", 21, "--which", "c,q", "--out", tmp_path / "u") == 0
    assert (tmp_path / "u" / "heatmap_q.svg").exists()
    assert run("scan", "--zoo", "pauli", "--res", 7, "--format", "svg", "--out", tmp_path / "p") == 0
    assert "slice" in (tmp_path / "p" / "heatmap.svg").read_text()


def test_spec_json_input(tmp_path):
    spec = json.dumps({"kind": "commuting_points", "params": {"points": [[0, 0], [1, 1]]}})
    assert run("scan", "--spec", spec, "--region", "-1:1^2", "--res", 3, "--format", "json", "--out", tmp_path) == 0
    obj = json.loads((tmp_path / "grid.json").read_text())
    assert obj["region"]["resolution"] == [3, 3]


@pytest.mark.parametrize(
    "args",
    [
        ["scan", "--zoo", "two_projection", "--z", "3"],
        ["scan", "--zoo", "pauli", "--region", "1:0^3"],
        ["scan", "--zoo", "pauli", "--region", "-1:1^2"],
        ["scan", "--zoo", "pauli", "--epsilon", "-1"],
        ["scan", "--zoo", "pauli", "--which", "x"],
        ["scan", "--zoo", "pauli", "--format", "png"],
        ["scan", "--spec", "{not json"],
        ["scan"],
        [],
    ],
)
def test_validation_errors_exit_1(args, tmp_path, capsys):
    assert run(*args, *(["--out", tmp_path] if args else [])) == 1


def test_curve_outputs(tmp_path, capsys):
    assert run("curve", "--out", tmp_path) == 0
    names = {p.name for p in tmp_path.iterdir()}
    for tag in ("b1.00", "b2.00", "b2.05"):
        assert f"curve_{tag}.json" in names and f"curve_{tag}.csv" in names
    assert "curves.svg" in names
    b1 = json.loads((tmp_path / "curve_b1.00.json").read_text())
    jsonschema.validate(b1, schema.CURVE)
    acc = [(p["x"], p["z"]) for p in b1["points"] if p["accepted"]]
    assert acc[-1] == (0.0, 1.0)
    first = b1["points"][0]
    assert (first["x"], first["z"]) == (1.0, 0.0)
    assert not b1["experimental"]
    assert json.loads((tmp_path / "curve_b2.05.json").read_text())["experimental"]


def test_curve_b0_is_degenerate(tmp_path):
    assert run("curve", "--b", 0, "--out", tmp_path) == 0
    obj = json.loads((tmp_path / "curve_b0.00.json").read_text())
    assert [p["cause"] for p in obj["points"]] == ["degenerate"]


def test_slice(tmp_path):
    assert run("slice", "--zoo", "pauli", "--direction", "0,0,-1", "--t", "0:2", "--res", 5, "--out", tmp_path) == 0
    rows = (tmp_path / "slice.csv").read_text().splitlines()
    assert rows[0] == "t,mu_c,mu_q,mu_w" and len(rows) == 6
    assert float(rows[3].split(",")[1]) == pytest.approx(0, abs=1e-12)


def test_suites(tmp_path, capsys):
    assert run("oracle-check", "--seed", 3, "--out", tmp_path) == 0
    obj = json.loads((tmp_path / "oracle-check.json").read_text())
    jsonschema.validate(obj, schema.SUITE)
    assert obj["passed"]
    assert run("property-suite", "--samples", 100, "--out", tmp_path) == 0
    assert "property-suite: PASS" in capsys.readouterr().out


def test_failed_suite_exits_2(tmp_path, monkeypatch):
    from cliffps import suites

    def broken(seed, samples=0):
        res = suites.SuiteResult("property-suite", seed)
        res.checks.append(suites.Check("always fails", 1.0, 0.0, 1))
        return res

    monkeypatch.setattr(suites, "property_suite", broken)
    assert run("property-suite", "--out", tmp_path) == 2


def test_report(tmp_path):
    assert run("report", "--format", "json", "--out", tmp_path) == 0
    index = json.loads((tmp_path / "index.json").read_text())
    assert set(index) == {"pauli", "two_projection_z0.50", "universal_pair", "hemisphere_b1", "curves"}


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "cliffps", "--schema"], capture_output=True, text=True)
    assert proc.returncode == 0 and '"version": 1' in proc.stdout
