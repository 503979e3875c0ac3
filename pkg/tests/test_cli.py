"""End-to-end CLI behaviour: formats, exit codes, determinism."""

import json
import math

import numpy as np
import pytest

import muskat
from muskat.cli import main
from muskat.export import read_table


def run(args):
    return main(args)


def test_constants_report(capsys):
    assert run(["constants", "--l", "3"]) == 0
    out = capsys.readouterr().out
    assert "lambda_star = 2.90901" in out
    assert "h_star      = 2.62205" in out
    assert "l=3: 1.111" in out
    assert "regime (i) TOUCHES_BOUNDARY" in out  # default h = 2 < h_star


def test_classify_touching(capsys):
    h = muskat.constants().h_star / 2.0
    assert run(["classify", "--h", str(h)]) == 0
    assert "regime (i) TOUCHES_BOUNDARY" in capsys.readouterr().out


def test_classify_slope_blowup(capsys):
    assert run(["classify", "--h", "5"]) == 0
    assert "regime (iii) SLOPE_BLOWUP" in capsys.readouterr().out


def test_invalid_density_ordering(capsys):
    code = run(["constants", "--rho-plus", "0.5", "--rho-minus", "1.0"])
    assert code == 2
    assert "rho_plus must exceed rho_minus" in capsys.readouterr().err


def test_branch_rows_and_monotonicity(tmp_path):
    out = tmp_path / "branch.csv"
    assert run(["branch", "--l", "1", "--n", "50", "--h", "5", "--out", str(out)]) == 0
    meta, cols = read_table(str(out))
    assert meta["schema_version"] == 1
    assert cols["lambda"].size == 50
    order = np.argsort(cols["lambda"])
    amps = cols["amplitude"][order]
    assert np.all(np.diff(amps) < 0)  # amplitude falls as lambda rises
    assert np.all(cols["truncated"] == 0)


def test_branch_touching_boundary_row(tmp_path):
    out = tmp_path / "branch_h1.csv"
    assert run(["branch", "--l", "1", "--n", "25", "--h", "1", "--out", str(out)]) == 0
    _, cols = read_table(str(out))
    # the row at the window endpoint has the cell-filling amplitude
    boundary = cols["amplitude"][np.argmin(cols["lambda"])]
    assert boundary == pytest.approx(1.0, abs=1e-9)


def test_branch_mode_scaling(tmp_path):
    out1 = tmp_path / "b1.csv"
    out3 = tmp_path / "b3.csv"
    assert run(["branch", "--l", "1", "--n", "20", "--h", "5", "--out", str(out1)]) == 0
    assert run(["branch", "--l", "3", "--n", "20", "--h", "5", "--out", str(out3)]) == 0
    _, c1 = read_table(str(out1))
    _, c3 = read_table(str(out3))
    assert np.max(np.abs(c3["gamma"] - c1["gamma"] / 9.0)) <= 1e-12


def test_profile_trivial(tmp_path):
    out = tmp_path / "prof.csv"
    assert run(["profile", "--lambda", "1.0", "--out", str(out)]) == 0
    meta, cols = read_table(str(out))
    assert meta["residual_ode"] == 0.0
    assert np.max(np.abs(cols["f"])) == 0.0


def test_profile_even_symmetry(tmp_path):
    out = tmp_path / "prof_even.csv"
    assert run(
        ["profile", "--lambda", "0.9", "--parity", "even", "--n", "257", "--out", str(out)]
    ) == 0
    meta, cols = read_table(str(out))
    assert meta["parity"] == "even"
    f = cols["f"]
    assert f[0] == pytest.approx(np.max(np.abs(f)), rel=1e-12)  # crest at x = 0
    assert np.max(np.abs(f - f[::-1])) <= 1e-9  # symmetric columns


def test_profile_sign_flag(tmp_path):
    plus = tmp_path / "plus.csv"
    minus = tmp_path / "minus.csv"
    assert run(["profile", "--lambda", "0.8", "--out", str(plus)]) == 0
    assert run(["profile", "--lambda", "0.8", "--sign", "minus", "--out", str(minus)]) == 0
    _, cp = read_table(str(plus))
    _, cm = read_table(str(minus))
    assert np.max(np.abs(cp["f"] + cm["f"])) == 0.0


def test_profile_out_of_window_message(capsys):
    code = run(["profile", "--lambda", "0.2", "--h", "1"])
    assert code == 2
    err = capsys.readouterr().err
    assert "feasible window" in err and ", 1]" in err


def test_profile_gamma_selector(tmp_path):
    by_lam = tmp_path / "lam.csv"
    by_gamma = tmp_path / "gam.csv"
    assert run(["profile", "--lambda", "0.8", "--out", str(by_lam)]) == 0
    assert run(["profile", "--gamma", "1.25", "--out", str(by_gamma)]) == 0
    assert by_lam.read_bytes() == by_gamma.read_bytes()


def test_lambda_gamma_mutually_exclusive():
    with pytest.raises(SystemExit) as exc:
        run(["profile", "--lambda", "0.8", "--gamma", "1.25"])
    assert exc.value.code == 2


def test_pendulum_trivial(tmp_path):
    out = tmp_path / "pend.csv"
    assert run(["pendulum", "--lambda", "1.0", "--out", str(out)]) == 0
    meta, _ = read_table(str(out))
    assert meta["L_formula"] == pytest.approx(2.0 * math.pi, rel=1e-12)
    assert meta["L_arclength"] == pytest.approx(2.0 * math.pi, rel=1e-12)


def test_pendulum_dual_period(tmp_path):
    out = tmp_path / "pend9.csv"
    assert run(["pendulum", "--lambda", "0.9", "--out", str(out)]) == 0
    meta, cols = read_table(str(out))
    assert meta["L_abs_diff"] <= 1e-6
    assert np.max(np.abs(cols["theta"])) < math.pi / 2


def test_pendulum_saturation_warning(tmp_path, capsys):
    lam = muskat.constants().lambda_star + 1e-6
    out = tmp_path / "sat.csv"
    assert run(["pendulum", "--lambda", f"{lam:.15f}", "--n", "64", "--out", str(out)]) == 0
    assert "saturation band" in capsys.readouterr().err


def test_coexist_table(tmp_path):
    out = tmp_path / "coexist.csv"
    assert run(["coexist", "--l-max", "5", "--out", str(out)]) == 0
    _, cols = read_table(str(out))
    assert cols["l"].astype(int).tolist() == [2, 3, 4, 5]
    assert np.all(cols["gamma_low"] < cols["gamma_high"])


def test_expansion_check_report(tmp_path):
    out = tmp_path / "exp.csv"
    assert run(["expansion-check", "--l", "1", "--eps", "0.04,0.08", "--out", str(out)]) == 0
    meta, cols = read_table(str(out))
    assert meta["expected_coefficient"] == pytest.approx(0.375, rel=1e-12)
    assert meta["fitted_coefficient"] == pytest.approx(0.375, rel=0.02)
    assert cols["eps"].size == 2


def test_outputs_deterministic(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    args = ["branch", "--l", "2", "--n", "15", "--h", "5"]
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_json_format_round_trip(tmp_path):
    out = tmp_path / "prof.json"
    assert run(["profile", "--lambda", "0.9", "--format", "json", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["schema_version"] == "1"
    assert set(payload["samples"]) == {"x", "f", "f_prime"}
    meta, cols = read_table(str(out))
    assert meta["lambda"] == pytest.approx(0.9, rel=1e-12)
    assert cols["x"].size == len(payload["samples"]["x"]) > 0


def test_emitted_profile_revalidates(tmp_path):
    out = tmp_path / "prof.csv"
    assert run(["profile", "--lambda", "0.7", "--out", str(out)]) == 0
    meta, cols = read_table(str(out))
    rebuilt = muskat.SolutionProfile(
        lam=meta["lambda"],
        alpha=meta["alpha"],
        period=cols["x"][-1] - cols["x"][0],
        parity=str(meta["parity"]),
        x=cols["x"],
        f=cols["f"],
        f_prime=cols["f_prime"],
    )
    res, mean = muskat.residual(rebuilt)
    assert res <= 1e-3  # file samples carry the 2*pi export grid, not the fine grid
    assert mean <= 1e-9


def test_config_file_and_flag_precedence(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"h": 5.0}))
    assert run(["classify", "--config", str(cfg)]) == 0
    assert "SLOPE_BLOWUP" in capsys.readouterr().out
    assert run(["classify", "--config", str(cfg), "--h", "1.0"]) == 0
    assert "TOUCHES_BOUNDARY" in capsys.readouterr().out


def test_config_file_rejects_unknown_keys(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text(json.dumps({"not_a_key": 1}))
    assert run(["classify", "--config", str(cfg)]) == 2
    assert "not_a_key" in capsys.readouterr().err


def test_invalid_tolerance_rejected(capsys):
    assert run(["classify", "--tol", "0"]) == 2
    assert "tol" in capsys.readouterr().err


def test_config_validation_names_fields(tmp_path, capsys):
    for payload, field in [
        ({"precision": 3}, "precision"),
        ({"n_points": 1}, "n_points"),
        ({"format": "xml"}, "format"),
        ({"alpha_max": -1.0}, "alpha_max"),
    ]:
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(payload))
        assert run(["classify", "--config", str(cfg)]) == 2
        assert field in capsys.readouterr().err
