from __future__ import annotations

import time
from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence

import numpy as np
from loguru import logger
from tqdm import tqdm

from errors import ParameterError
from models import ApproxComparison, EffectiveParams, SweepRecord, SweepResult
from spectra import approx_values, squeezing_spectrum

from .minimize import DEFAULT_COARSE_POINTS, DEFAULT_REGIME_MARGIN, default_window, min_squeezing


def _with(e: EffectiveParams, **update) -> EffectiveParams:
    return EffectiveParams.model_validate({**e.model_dump(), **update})


def _kappa_point(e: EffectiveParams, value: float) -> EffectiveParams:
    if not value > 0:
        raise ParameterError(f"κ must be positive, got {value}")
    return _with(e, kappa1=value, kappa2=value)


def _atoms_point(e: EffectiveParams, value: float) -> EffectiveParams:
    if value < 0 or value != int(value):
        raise ParameterError(f"atom number must be a non-negative integer, got {value}")
    return _with(e, n_atoms=int(value))


def _evaluate(
    e: EffectiveParams,
    value: float,
    theta: float,
    half_width: Optional[float],
    negative_only: bool,
    coarse_points: int,
    regime_margin: float,
) -> SweepRecord:
    start = time.perf_counter()
    rec = min_squeezing(
        e,
        theta=theta,
        window=default_window(e, half_width, negative_only),
        coarse_points=coarse_points,
        regime_margin=regime_margin,
    )
    return SweepRecord(
        value=value,
        omega_min=rec.omega_min,
        s_min=rec.s_min,
        entangled=rec.entangled,
        regime_ok=rec.regime_ok,
        wall_time=time.perf_counter() - start,
    )


def _sweep(
    label: str,
    points: Sequence[EffectiveParams],
    grid: Sequence[float],
    theta: float,
    half_width: Optional[float],
    negative_only: bool,
    coarse_points: int,
    regime_margin: float,
    workers: int,
) -> List[SweepRecord]:
    args = [(e, float(v), theta, half_width, negative_only, coarse_points, regime_margin) for e, v in zip(points, grid)]
    logger.info("Sweeping {} over {} point(s) with {} worker(s)", label, len(args), workers)
    if workers <= 1:
        return [_evaluate(*a) for a in tqdm(args, desc=f"sweep {label}")]
    with Pool(processes=workers) as pool:
        jobs = [pool.apply_async(_evaluate, a) for a in args]
        # collected in submission order, i.e. grid order
        return [job.get() for job in tqdm(jobs, desc=f"sweep {label}")]


def _run(
    parameter: str,
    to_point: Callable[[EffectiveParams, float], EffectiveParams],
    e_base: EffectiveParams,
    grid: Sequence[float],
    theta: float,
    half_width: Optional[float],
    negative_only: bool,
    coarse_points: int,
    regime_margin: float,
    workers: int,
) -> SweepResult:
    if not len(grid):
        raise ParameterError(f"{parameter} grid is empty")
    points = [to_point(e_base, float(v)) for v in grid]
    records = _sweep(
        parameter, points, grid, theta, half_width, negative_only, coarse_points, regime_margin, workers
    )
    for r in records:
        if not r.regime_ok:
            logger.warning("{}={:g}: low-excitation regime violated (ω′/(g√N) < {:g})", parameter, r.value, regime_margin)
    return SweepResult(parameter=parameter, theta=theta, grid=[float(v) for v in grid], records=records)


def sweep_kappa(
    e_base: EffectiveParams,
    kappa_grid: Sequence[float],
    theta: float = 0.0,
    half_width: Optional[float] = None,
    negative_only: bool = False,
    coarse_points: int = DEFAULT_COARSE_POINTS,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
    workers: int = 1,
) -> SweepResult:
    """Minimum squeezing for each κ = κ1 = κ2, other parameters fixed."""
    return _run(
        "kappa", _kappa_point, e_base, kappa_grid, theta, half_width, negative_only, coarse_points, regime_margin, workers
    )


def sweep_atoms(
    e_base: EffectiveParams,
    n_grid: Sequence[float],
    theta: float = 0.0,
    half_width: Optional[float] = None,
    negative_only: bool = False,
    coarse_points: int = DEFAULT_COARSE_POINTS,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
    workers: int = 1,
) -> SweepResult:
    """Minimum squeezing for each condensate atom number N."""
    return _run(
        "n_atoms", _atoms_point, e_base, n_grid, theta, half_width, negative_only, coarse_points, regime_margin, workers
    )


def compare_approx(e: EffectiveParams, omega_grid: Optional[Sequence[float]] = None) -> ApproxComparison:
    """Exact θ = 0 spectrum against the large-detuning closed form."""
    if omega_grid is None:
        omega_grid = np.linspace(-3 * e.rate_scale, 3 * e.rate_scale, 601)
    curve = squeezing_spectrum(e, 0.0, omega_grid)
    approx = approx_values(e, curve.omega)
    table = ApproxComparison(omega=curve.omega, s_exact=curve.s_plus, s_approx=approx)
    logger.info(
        "Exact vs approximate spectrum: max |Δ|={:.4g}, mean |Δ|={:.4g}", table.max_deviation, table.mean_deviation
    )
    return table
