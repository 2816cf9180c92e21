import json

import pytest

from loccdist.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_bounds_two_qubit(capsys):
    code, out, _ = run(capsys, "bounds", "--schmidt", "0.875,0.125")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["beta_two_way_upper"] - 0.428571) <= 1e-5
    assert abs(payload["beta_one_way"] - 0.5) <= 1e-12
    assert payload["flags"] == ""


def test_bounds_maximally_entangled(capsys):
    code, out, _ = run(capsys, "bounds", "--schmidt", "0.5,0.5")
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["beta_g"] - 0.25) <= 1e-12
    for key in ("beta_sep", "beta_two_way_upper", "beta_one_way"):
        assert abs(payload[key] - 0.5) <= 1e-9


def test_bounds_product_with_dims(capsys):
    code, out, _ = run(capsys, "bounds", "--schmidt", "1.0", "--dims", "2,2")
    assert code == 0
    payload = json.loads(out)
    for key in ("beta_g", "beta_sep", "beta_two_way_upper", "beta_one_way"):
        assert abs(payload[key] - 0.25) <= 1e-12


def test_bounds_rejects_bad_sum(capsys):
    code, _, err = run(capsys, "bounds", "--schmidt", "0.9,0.2")
    assert code == 2
    assert "sum" in err


def test_bounds_rejects_bad_dims(capsys):
    code, _, _ = run(capsys, "bounds", "--schmidt", "0.5,0.5", "--dims", "1,2")
    assert code == 2


def test_sweep_fig1(tmp_path, capsys):
    out_path = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "sweep", "--family", "fig1", "--points", "6", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().strip().splitlines()
    assert lines[0] == "t,beta_g,beta_one_way,beta_sep,beta_two_way_upper"
    assert len(lines) == 7
    ts = [float(line.split(",")[0]) for line in lines[1:]]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    last = [float(x) for x in lines[-1].split(",")]
    assert abs(last[0] - 0.5) <= 1e-12
    assert abs(last[1] - 0.25) <= 1e-9
    assert abs(last[2] - 0.5) <= 1e-9
    assert abs(last[3] - 0.5) <= 1e-9
    assert abs(last[4] - 0.5) <= 1e-9


def test_sweep_deterministic_output(tmp_path, capsys):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    run(capsys, "sweep", "--family", "fig1", "--points", "5", "--out", str(a), "--seed", "3")
    run(capsys, "sweep", "--family", "fig1", "--points", "5", "--out", str(b), "--seed", "3")
    assert a.read_bytes() == b.read_bytes()


def test_sweep_custom_family(tmp_path, capsys):
    out_path = tmp_path / "custom.csv"
    code, _, _ = run(
        capsys,
        "sweep",
        "--family",
        "1-2t,t,t",
        "--points",
        "4",
        "--out",
        str(out_path),
        "--range",
        "0,0.3333333333333333",
    )
    assert code == 0
    assert len(out_path.read_text().strip().splitlines()) == 5


def test_sweep_rejects_unknown_family(capsys, tmp_path):
    code, _, _ = run(
        capsys, "sweep", "--family", "nope", "--points", "4", "--out", str(tmp_path / "x.csv")
    )
    assert code == 2


def test_sweep_rejects_infeasible_custom_family(capsys, tmp_path):
    code, _, _ = run(
        capsys,
        "sweep",
        "--family",
        "1-3t,2t,t",
        "--points",
        "4",
        "--out",
        str(tmp_path / "x.csv"),
        "--range",
        "0,0.4",
    )
    assert code == 2


def test_optimize_with_grid(capsys):
    code, out, _ = run(
        capsys, "optimize", "--schmidt", "0.875,0.125", "--grid-step", "0.001"
    )
    assert code == 0
    payload = json.loads(out)
    assert abs(payload["beta_two_way_upper"] - 0.4285714285714286) <= 1e-6
    assert payload["grid_gap"] <= 1e-6
    assert payload["method"] == "projected-gradient"


def test_verify_passes(capsys):
    code, out, _ = run(
        capsys, "verify", "--schmidt", "0.75,0.25", "--mc-samples", "20000"
    )
    assert code == 0
    assert "FAIL" not in out
    assert "appendix-identity" in out
    assert "monte-carlo-type-2" in out


def test_verify_bell(capsys):
    code, out, _ = run(capsys, "verify", "--schmidt", "0.5,0.5", "--mc-samples", "5000")
    assert code == 0
    for line in out.strip().splitlines():
        assert line.endswith("PASS")


def test_verify_rejects_malformed(capsys):
    code, _, err = run(capsys, "verify", "--schmidt", "0.9,0.2")
    assert code == 2
    assert "sum" in err


def test_cli_entry_point_runs():
    with pytest.raises(SystemExit):
        main(["--help"])
