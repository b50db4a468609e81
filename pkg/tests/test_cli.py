import json
from pathlib import Path

import pytest
from typer.testing import CliRunner

from cli import app

CONFIGS = Path(__file__).resolve().parent.parent / "configs"
runner = CliRunner()


def data_rows(text: str):
    lines = [line for line in text.splitlines() if not line.startswith("#")]
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


@pytest.fixture
def uncoupled_config(tmp_path) -> Path:
    path = tmp_path / "uncoupled.json"
    path.write_text(
        json.dumps(
            {
                "effective": {"g1": 0.0, "g2": 0.0, "omega_prime": 1e5, "kappa1": 1.0, "kappa2": 1.0, "n_atoms": 10},
                "spectrum": {"omega_points": 21},
                "sweep": {"grid": [1.0], "coarse_points": 101},
            }
        ),
        encoding="utf-8",
    )
    return path


def test_params_reports_ratio(tmp_path):
    out = tmp_path / "params.json"
    result = runner.invoke(app, ["params", "--config", str(CONFIGS / "experiment.json"), "--out", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["kappa_over_g"][0] == pytest.approx(1.23, abs=0.01)
    assert {c["name"] for c in report["regimes"]["checks"]} >= {"adiabatic_elimination", "low_excitation_1"}


def test_spectrum_csv_layout(tmp_path, uncoupled_config):
    out = tmp_path / "spectrum.csv"
    result = runner.invoke(app, ["spectrum", "-c", str(uncoupled_config), "-o", str(out), "--theta", "0.5"])
    assert result.exit_code == 0, result.output
    raw = out.read_bytes()
    assert b"\r\n" not in raw
    text = raw.decode("utf-8")
    assert text.startswith("# {")
    assert '"theta": 0.5' in text
    header, rows = data_rows(text)
    assert header == ["omega", "S_plus", "S_minus"]
    assert len(rows) == 21
    assert all(float(r[1]) == pytest.approx(1.0, abs=1e-12) for r in rows)


def test_spectrum_with_approx_and_plot_script(tmp_path):
    out = tmp_path / "fig6.csv"
    script = tmp_path / "plot_fig6.py"
    result = runner.invoke(
        app,
        ["spectrum", "-c", str(CONFIGS / "fig6.json"), "-o", str(out), "--omega-points", "7", "--plot-script", str(script)],
    )
    assert result.exit_code == 0, result.output
    header, rows = data_rows(out.read_text(encoding="utf-8"))
    assert header == ["omega", "S_plus", "S_minus", "S_approx"]
    assert len(rows) == 7
    # ω = 0 is the middle row
    assert float(rows[3][1]) == pytest.approx(1.16, abs=1e-9)
    assert float(rows[3][3]) == pytest.approx(1.04, abs=1e-9)
    assert str(out) in script.read_text(encoding="utf-8")


def test_spectrum_rejects_inverted_window(uncoupled_config):
    result = runner.invoke(app, ["spectrum", "-c", str(uncoupled_config), "--omega-min", "1", "--omega-max", "-1"])
    assert result.exit_code == 2


def test_sweep_single_point(tmp_path, uncoupled_config):
    out = tmp_path / "sweep.csv"
    result = runner.invoke(app, ["sweep", "-c", str(uncoupled_config), "-o", str(out)])
    assert result.exit_code == 0, result.output
    header, rows = data_rows(out.read_text(encoding="utf-8"))
    assert header == ["kappa", "omega_min", "S_min", "entangled"]
    assert len(rows) == 1
    assert rows[0][3] == "false"


def test_evolve_report(tmp_path):
    out = tmp_path / "evolve.json"
    result = runner.invoke(app, ["evolve", "-o", str(out), "--tau", "3.0"])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["chi_tau"] == pytest.approx(0.3)
    assert report["fidelity_vs_oracle"] >= 1 - 1e-8
    assert report["converged"]
    assert "three_mode" not in report


def test_evolve_zero_time(tmp_path):
    out = tmp_path / "evolve.json"
    result = runner.invoke(app, ["evolve", "-o", str(out)])
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["Gamma"] == [0.0, 0.0]
    assert report["entropy"] == pytest.approx(0.0, abs=1e-12)


def test_malformed_config_exits_with_usage_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"effective": {"g1": 1.0}}', encoding="utf-8")
    result = runner.invoke(app, ["params", "--config", str(path)])
    assert result.exit_code == 2


def test_validate_passes_on_default_config():
    result = runner.invoke(app, ["validate"])
    assert result.exit_code == 0, result.output
    assert "checks passed" in result.output
    assert "PASS  conserved_charge_variance" in result.output
    assert "PASS  approx_formula_values" in result.output


def test_validate_negative_control_fails():
    result = runner.invoke(app, ["validate", "--flip-offdiagonal"])
    assert result.exit_code == 1
    assert "FAIL  bogoliubov_identities" in result.output


def test_spectrum_with_every_point_pole_guarded(uncoupled_config):
    result = runner.invoke(
        app,
        ["spectrum", "-c", str(uncoupled_config), "--omega-min", "-100000", "--omega-max", "100000", "--omega-points", "2"],
    )
    assert result.exit_code == 2


def test_atom_number_sweep_recipe(tmp_path):
    out = tmp_path / "inset.csv"
    result = runner.invoke(app, ["sweep", "-c", str(CONFIGS / "fig5_inset.json"), "-o", str(out)])
    assert result.exit_code == 0, result.output
    header, rows = data_rows(out.read_text(encoding="utf-8"))
    assert header == ["N", "omega_min", "S_min", "entangled"]
    assert [int(r[0]) for r in rows] == [100, 1000, 10000]
    assert [float(r[2]) for r in rows] == pytest.approx([0.9608, 0.68, 0.5], abs=5e-3)


def test_sweep_parameter_flag(tmp_path, uncoupled_config):
    out = tmp_path / "sweep.csv"
    result = runner.invoke(app, ["sweep", "-c", str(uncoupled_config), "-o", str(out), "--parameter", "n_atoms"])
    assert result.exit_code == 0, result.output
    header, rows = data_rows(out.read_text(encoding="utf-8"))
    assert header[0] == "N"
    assert rows[0][0] == "1"


def test_sweep_parameter_flag_rejects_unknown_quantity(uncoupled_config):
    result = runner.invoke(app, ["sweep", "-c", str(uncoupled_config), "--parameter", "omega_prime"])
    assert result.exit_code == 2


def test_evolve_three_mode_at_default_operating_point(tmp_path):
    out = tmp_path / "evolve.json"
    result = runner.invoke(app, ["evolve", "-o", str(out), "--tau", "3.0", "--three-mode"])
    assert result.exit_code == 0, result.output
    block = json.loads(out.read_text(encoding="utf-8"))["three_mode"]
    assert block["truncations"] == [14, 14, 4]
    assert max(block["tail_mass"]) < 1e-12
    assert abs(block["charge_mean"]) < 1e-10
    assert block["charge_variance"] < 1e-10
    assert block["reduced_fidelity"] >= 0.99
    assert block["large_detuning_ratio"] == pytest.approx(1000.0)
