import sys
from functools import wraps
from pathlib import Path
from typing import Callable, Optional

import typer
from dotenv import load_dotenv
from loguru import logger

from errors import ModelError
from models import RunConfig
from pipelines import run_evolve, run_params, run_spectrum, run_sweep, run_validation
from sources import apply_overrides, load_run_config


load_dotenv()  # Load env vars from .env if present
app = typer.Typer(help="Entangled light from a condensate in a two-mode cavity")

EXIT_VALIDATION_FAILED = 1
EXIT_USAGE = 2

ConfigOpt = typer.Option(None, "--config", "-c", help="JSON run config (see configs/)")
OutOpt = typer.Option(None, "--out", "-o", help="Output path (stdout if omitted)")


@app.callback()
def main(
    log_level: str = typer.Option("INFO", envvar="BECSQUEEZE_LOG_LEVEL", help="Log level for stderr"),
):
    logger.remove()
    logger.add(sys.stderr, level=log_level.upper())


def _usage_errors(fn: Callable) -> Callable:
    """Turn config and parameter errors into exit code 2."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ModelError as exc:
            logger.error("{}", exc)
            raise typer.Exit(EXIT_USAGE)

    return wrapper


def _config(path: Optional[Path], **overrides) -> RunConfig:
    return apply_overrides(load_run_config(path), **overrides)


@app.command("params")
@_usage_errors
def cmd_params(config: Optional[Path] = ConfigOpt, out: Optional[Path] = OutOpt):
    """Derived model parameters and regime checks."""
    run_params(_config(config), out)


@app.command("spectrum")
@_usage_errors
def cmd_spectrum(
    config: Optional[Path] = ConfigOpt,
    out: Optional[Path] = OutOpt,
    theta: Optional[float] = typer.Option(None, "--theta", help="Quadrature angle in radians"),
    omega_min: Optional[float] = typer.Option(None, "--omega-min"),
    omega_max: Optional[float] = typer.Option(None, "--omega-max"),
    omega_points: Optional[int] = typer.Option(None, "--omega-points"),
    plot_script: Optional[Path] = typer.Option(None, "--plot-script", help="Also write a matplotlib script for the CSV"),
):
    """Squeezing spectrum S± on a frequency grid, as CSV."""
    cfg = _config(config, theta=theta, omega_min=omega_min, omega_max=omega_max, omega_points=omega_points)
    if cfg.spectrum.omega_min is not None and cfg.spectrum.omega_max is not None:
        if not cfg.spectrum.omega_min < cfg.spectrum.omega_max:
            raise typer.BadParameter("--omega-min must be below --omega-max")
    run_spectrum(cfg, out, plot_script)


@app.command("sweep")
@_usage_errors
def cmd_sweep(
    config: Optional[Path] = ConfigOpt,
    out: Optional[Path] = OutOpt,
    theta: Optional[float] = typer.Option(None, "--theta", help="Quadrature angle in radians"),
    workers: Optional[int] = typer.Option(None, "--workers", envvar="BECSQUEEZE_WORKERS", help="Parallel sweep workers"),
    parameter: Optional[str] = typer.Option(None, "--parameter", help="Swept quantity: kappa or n_atoms"),
):
    """Minimum squeezing over a κ or N grid, as CSV."""
    if workers is not None and workers < 1:
        raise typer.BadParameter("--workers must be at least 1")
    run_sweep(_config(config, theta=theta, workers=workers, parameter=parameter), out)


@app.command("evolve")
@_usage_errors
def cmd_evolve(
    config: Optional[Path] = ConfigOpt,
    out: Optional[Path] = OutOpt,
    tau: Optional[float] = typer.Option(None, "--tau", help="Evolution time"),
    three_mode: Optional[bool] = typer.Option(None, "--three-mode/--two-mode", help="Also evolve the condensate mode"),
):
    """Closed-form pair state against the sparse-exponential oracle."""
    run_evolve(_config(config, tau=tau, three_mode=three_mode), out)


@app.command("validate")
@_usage_errors
def cmd_validate(
    config: Optional[Path] = ConfigOpt,
    flip_offdiagonal: bool = typer.Option(
        False, "--flip-offdiagonal", help="Negative control: break the drift-matrix sign structure"
    ),
):
    """Run the invariant suite; exit 1 if any check fails."""
    cfg = _config(config, flip_offdiagonal=flip_offdiagonal or None)
    checks = run_validation(cfg)
    for c in checks:
        status = "PASS" if c.passed else "FAIL"
        suffix = " (report only)" if c.report_only else ""
        typer.echo(f"{status:4}  {c.name:24} {c.detail}{suffix}")
    failed = [c.name for c in checks if not c.passed]
    if failed:
        typer.echo(f"{len(failed)} check(s) failed: {', '.join(failed)}")
        raise typer.Exit(EXIT_VALIDATION_FAILED)
    typer.echo(f"all {len(checks)} checks passed")


if __name__ == "__main__":
    app()
