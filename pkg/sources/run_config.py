from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from loguru import logger
from pydantic import ValidationError

from errors import ConfigError, ModelError
from models import EffectiveParams, PhysicalParams, RunConfig
from params import derive_effective


def default_run_config() -> RunConfig:
    """Large-detuning operating point with κ = g, ω′ = 10⁵g and N = 10⁴."""
    return RunConfig(
        effective=EffectiveParams(g1=1.0, g2=1.0, omega_prime=1e5, kappa1=1.0, kappa2=1.0, n_atoms=10_000)
    )


def load_run_config(path: Optional[Path]) -> RunConfig:
    if path is None:
        logger.info("No config given, using the built-in operating point")
        return default_run_config()
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = RunConfig.model_validate_json(text)
    except ValidationError as exc:
        raise ConfigError(f"invalid config {path}:\n{exc}") from exc
    logger.info("Loaded run config from {}", path)
    return cfg


def _set(block: Dict[str, Any], key: str, value: Any) -> None:
    if value is not None:
        block[key] = value


def apply_overrides(
    cfg: RunConfig,
    theta: Optional[float] = None,
    omega_min: Optional[float] = None,
    omega_max: Optional[float] = None,
    omega_points: Optional[int] = None,
    workers: Optional[int] = None,
    parameter: Optional[str] = None,
    tau: Optional[float] = None,
    three_mode: Optional[bool] = None,
    flip_offdiagonal: Optional[bool] = None,
) -> RunConfig:
    """Command-line values win over the file; None leaves a field alone."""
    data = cfg.model_dump()
    _set(data["spectrum"], "theta", theta)
    _set(data["sweep"], "theta", theta)
    _set(data["spectrum"], "omega_min", omega_min)
    _set(data["spectrum"], "omega_max", omega_max)
    _set(data["spectrum"], "omega_points", omega_points)
    _set(data["sweep"], "workers", workers)
    _set(data["sweep"], "parameter", parameter)
    _set(data["evolve"], "tau", tau)
    _set(data["evolve"], "three_mode", three_mode)
    _set(data["validation"], "flip_offdiagonal", flip_offdiagonal)
    # computed fields are echoed by model_dump but are not inputs
    if data.get("effective"):
        for key in ("chi1", "chi2", "chi"):
            data["effective"].pop(key, None)
    try:
        return RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid command-line override:\n{exc}") from exc


def resolve_parameters(cfg: RunConfig) -> Tuple[Optional[PhysicalParams], EffectiveParams]:
    """Effective parameters of a run, deriving them from the physical block if needed."""
    if cfg.effective is not None:
        return None, cfg.effective
    assert cfg.physical is not None
    try:
        return cfg.physical, derive_effective(cfg.physical)
    except ModelError as exc:
        raise ConfigError(str(exc)) from exc
