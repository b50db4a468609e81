import json
import math
from pathlib import Path

import pytest

from errors import ConfigError
from sources import apply_overrides, default_run_config, load_run_config, resolve_parameters

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


@pytest.mark.parametrize("name", ["fig3.json", "fig5.json", "fig5_inset.json", "fig6.json", "experiment.json"])
def test_shipped_configs_load(name):
    cfg = load_run_config(CONFIGS / name)
    _, e = resolve_parameters(cfg)
    assert e.omega_prime > 0


def test_experiment_config_derives_parameters():
    physical, e = resolve_parameters(load_run_config(CONFIGS / "experiment.json"))
    assert physical is not None
    assert e.unit == "MHz"
    assert e.omega_prime == pytest.approx(1e4)
    assert e.kappa1 / e.g1 == pytest.approx(1.23, abs=0.01)


def test_default_config_is_the_large_detuning_point():
    cfg = load_run_config(None)
    assert cfg == default_run_config()
    assert cfg.effective.chi == pytest.approx(0.1)


def write(tmp_path, payload) -> Path:
    path = tmp_path / "run.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


EFFECTIVE = {"g1": 1.0, "g2": 1.0, "omega_prime": 1e4, "kappa1": 1.0, "kappa2": 1.0, "n_atoms": 100}
PHYSICAL = {
    "lambda1": 1.0,
    "lambda2": 1.0,
    "omega1cap": 1.0,
    "omega2cap": 1.0,
    "delta": 10.0,
    "omega21": 100.0,
    "nu": 10.0,
    "kappa1": 1.0,
    "kappa2": 1.0,
    "n_atoms": 100,
}


@pytest.mark.parametrize(
    "payload",
    [
        {"effective": EFFECTIVE, "physical": PHYSICAL},
        {},
        {"effective": EFFECTIVE, "plotting": {}},
        {"effective": {**EFFECTIVE, "kappa1": 0.0}},
        {"effective": EFFECTIVE, "spectrum": {"omega_points": 1}},
    ],
)
def test_invalid_configs(tmp_path, payload):
    with pytest.raises(ConfigError):
        load_run_config(write(tmp_path, payload))


def test_malformed_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{effective: ", encoding="utf-8")
    with pytest.raises(ConfigError):
        load_run_config(path)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        load_run_config(tmp_path / "absent.json")


def test_unphysical_derivation_is_a_config_error(tmp_path):
    cfg = load_run_config(write(tmp_path, {"physical": {**PHYSICAL, "nu": 1000.0}}))
    with pytest.raises(ConfigError):
        resolve_parameters(cfg)


def test_flags_override_file(tmp_path):
    cfg = load_run_config(write(tmp_path, {"effective": EFFECTIVE, "spectrum": {"theta": 1.0, "omega_points": 11}}))
    out = apply_overrides(cfg, theta=math.pi / 4, omega_min=-2.0, workers=3, tau=0.5, three_mode=True)
    assert out.spectrum.theta == pytest.approx(math.pi / 4)
    assert out.sweep.theta == pytest.approx(math.pi / 4)
    assert out.spectrum.omega_min == -2.0
    assert out.spectrum.omega_points == 11
    assert out.sweep.workers == 3
    assert out.evolve.tau == 0.5
    assert out.evolve.three_mode
    assert out.effective == cfg.effective


def test_unset_flags_leave_config_alone():
    cfg = default_run_config()
    assert apply_overrides(cfg) == cfg


def test_bad_override_is_a_config_error():
    with pytest.raises(ConfigError):
        apply_overrides(default_run_config(), omega_points=1)


def test_sweep_parameter_override():
    out = apply_overrides(default_run_config(), parameter="n_atoms")
    assert out.sweep.parameter == "n_atoms"
    with pytest.raises(ConfigError):
        apply_overrides(default_run_config(), parameter="omega_prime")
