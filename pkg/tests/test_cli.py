import csv
import json

import numpy as np
import pytest

from cjw.cli import CommandConfig, main, run
from cjw.clifford import load_field


def out_text(capsys, argv):
    code = main(argv)
    return code, capsys.readouterr().out


def test_gen_poly_example(capsys):
    code, out = out_text(capsys, ["gen-poly", "--l", "2", "--alpha", "-5", "--beta", "-5", "--m", "3"])
    assert code == 0
    fields = out.strip().split(",")
    assert fields[:2] == ["3", "2"]
    re = [float(v) for v in fields[2::2]]
    alpha = beta = -5
    m = 3
    assert re == [(alpha - beta) ** 2 - m * (alpha + beta), (alpha - beta) * (2 * alpha + 2 * beta - 2),
                  (alpha + beta) * (alpha + beta - 2 + m)]


def test_run_with_config(tmp_path):
    cfg = CommandConfig("gen-poly", {"l": 1, "alpha": 1.0, "beta": 0.0, "m": 2}, str(tmp_path / "g.csv"))
    assert run(cfg) == 0
    assert (tmp_path / "g.csv").read_text() == "2,1,-1.0,0.0,-1.0,0.0\n"


def test_verify_report_schema(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "algebra", "--out", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert set(rep) == {"suite", "cases", "max_error", "pass"}
    assert rep["suite"] == "algebra" and rep["pass"] is True and rep["max_error"] < 1e-12


def test_verify_failure_sets_exit_code(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "--suite", "moments", "--out", str(out)]) == 1
    assert json.loads(out.read_text())["pass"] is False


def test_verify_rodrigues_example(tmp_path):
    out = tmp_path / "r.json"
    code = main(["verify", "--suite", "rodrigues", "--out", str(out)])
    rep = json.loads(out.read_text())
    assert code == 0 and rep["pass"] is True and rep["max_error"] < 1e-9


def test_spectrum_csv(capsys):
    code, out = out_text(capsys, ["spectrum", "--l", "1", "--alpha", "-4", "--beta", "-4", "--rho-max", "4", "--points", "5"])
    rows = list(csv.reader(out.splitlines()))
    assert code == 0 and rows[0] == ["rho", "re_scalar", "im_scalar", "re_vector", "im_vector"]
    assert len(rows) == 6 and float(rows[1][3]) == 0.0


def test_admissibility_json(capsys):
    code, out = out_text(capsys, ["admissibility", "--l", "1", "--alpha", "-4", "--beta", "-4"])
    assert code == 0 and abs(json.loads(out)["admissibility"] - 0.4 * np.pi**2) < 1e-8


def test_invalid_parameters_name_the_condition(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["spectrum", "--l", "1", "--alpha", "-1", "--beta", "-1"])
    assert exc.value.code == 2
    assert "alpha + beta + m + ell < 0" in capsys.readouterr().err


def test_cwt_of_zero_field(tmp_path):
    assert main(["gaussian-field", "--sigma", "0", "--n", "32", "--out", str(tmp_path / "zero")]) == 0
    assert main(["cwt", "--input", str(tmp_path / "zero.json"), "--scales", "3", "--out", str(tmp_path / "c/cw")]) == 0
    manifest = json.loads((tmp_path / "c/cw_manifest.json").read_text())
    assert len(manifest["files"]) == 3
    for name in manifest["files"]:
        f = load_field(tmp_path / "c" / name)
        assert all(np.all(v == 0) for v in f.channels.values())
    rows = list(csv.DictReader((tmp_path / "c/cw_summary.csv").read_text().splitlines()))
    assert len(rows) == 3 and all(float(r["energy"]) == 0 and float(r["max_abs_coeff"]) == 0 for r in rows)


def test_cwt_dimension_mismatch(tmp_path, capsys):
    main(["gaussian-field", "--m", "3", "--n", "8", "--out", str(tmp_path / "f")])
    with pytest.raises(SystemExit):
        main(["cwt", "--input", str(tmp_path / "f.json"), "--m", "2", "--out", str(tmp_path / "cw")])
    assert "m=3" in capsys.readouterr().err


def test_cwt_and_reconstruct(tmp_path):
    main(["gaussian-field", "--n", "64", "--sigma", "0.5", "--out", str(tmp_path / "g")])
    main(["cwt", "--input", str(tmp_path / "g.json"), "--l", "2", "--alpha", "-6", "--beta", "-6",
          "--out", str(tmp_path / "cw")])
    assert main(["reconstruct", "--manifest", str(tmp_path / "cw_manifest.json"), "--out", str(tmp_path / "rec")]) == 0
    f = load_field(tmp_path / "g.json").channel(0)
    rec = load_field(tmp_path / "rec.json").channel(0)
    assert np.linalg.norm(rec - f) / np.linalg.norm(f) < 0.05
    assert json.loads((tmp_path / "rec_report.json").read_text())["vector_residual"] < 1e-6


def test_frac_caputo(tmp_path, capsys):
    t = np.linspace(0, 3, 31)
    np.savetxt(tmp_path / "f.csv", np.stack([t, t], 1), delimiter=",")
    code, out = out_text(capsys, ["frac", "--kind", "caputo", "--alpha", "0.5", "--a", "0", "--t", "1", "2",
                                  "--input", str(tmp_path / "f.csv")])
    rows = list(csv.DictReader(out.splitlines()))
    assert code == 0
    for r in rows:
        tt = float(r["t"])
        assert abs(float(r["value"]) - 2 * np.sqrt(tt / np.pi)) < 1e-6


def test_frac_rejects_uncovered_interval(tmp_path, capsys):
    t = np.linspace(0, 1, 11)
    np.savetxt(tmp_path / "f.csv", np.stack([t, t], 1), delimiter=",")
    with pytest.raises(SystemExit):
        main(["frac", "--kind", "rl-integral", "--alpha", "0.5", "--a", "0", "--t", "2", "--input", str(tmp_path / "f.csv")])
    assert "covering" in capsys.readouterr().err


def test_repeated_runs_are_byte_identical(tmp_path):
    def artifacts(d):
        main(["gaussian-field", "--n", "32", "--sigma", "0.5", "--out", str(d / "g")])
        main(["cwt", "--input", str(d / "g.json"), "--scales", "4", "--out", str(d / "cw")])
        main(["spectrum", "--points", "9", "--out", str(d / "s.csv")])
        main(["verify", "--suite", "frft", "--out", str(d / "v.json")])
        return {p.name: p.read_bytes() for p in sorted(d.iterdir())}

    (tmp_path / "a").mkdir()
    (tmp_path / "b").mkdir()
    assert artifacts(tmp_path / "a") == artifacts(tmp_path / "b")
