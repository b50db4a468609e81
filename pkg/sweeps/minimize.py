from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np
from loguru import logger
from scipy.optimize import minimize_scalar

from errors import PoleGuardError
from models import EffectiveParams, MinimumRecord
from spectra import quadrature_noise, scattering_array, squeezing_spectrum
from spectra.squeezing import DEFAULT_TOLERANCE, Sign

DEFAULT_COARSE_POINTS = 2001
DEFAULT_XATOL = 1e-8
DEFAULT_REGIME_MARGIN = 10.0

Window = Tuple[float, float]


def default_window(e: EffectiveParams, half_width: Optional[float] = None, negative_only: bool = False) -> Window:
    half = 10 * e.rate_scale if half_width is None else float(half_width)
    return (-half, 0.0) if negative_only else (-half, half)


def low_excitation_ok(e: EffectiveParams, margin: float = DEFAULT_REGIME_MARGIN) -> bool:
    """ω′/(g√N) ≥ margin with g the larger coupling."""
    drive = max(abs(e.g1), abs(e.g2)) * math.sqrt(e.n_atoms)
    return drive == 0 or e.omega_prime / drive >= margin


def spectrum_value(e: EffectiveParams, omega: float, theta: float, sign: Sign = "plus") -> float:
    a_pos = scattering_array(e, omega)
    a_neg = scattering_array(e, -omega)
    return float(quadrature_noise(a_pos, a_neg, theta, sign)[0])


def min_squeezing(
    e: EffectiveParams,
    theta: float = 0.0,
    window: Optional[Window] = None,
    coarse_points: int = DEFAULT_COARSE_POINTS,
    xatol: float = DEFAULT_XATOL,
    sign: Sign = "plus",
    tolerance: float = DEFAULT_TOLERANCE,
    regime_margin: float = DEFAULT_REGIME_MARGIN,
) -> MinimumRecord:
    """Locate the minimum of S^θ(ω) inside `window`.

    A coarse scan picks the best grid point, then a bounded scalar search
    refines it between the two neighbouring grid points. A spectrum that
    never dips below 1 − tolerance yields a flat record.
    """
    lo, hi = default_window(e) if window is None else window
    if not lo < hi:
        raise ValueError(f"empty search window ({lo}, {hi})")
    for pole in (e.omega_prime, -e.omega_prime):
        if lo <= pole <= hi:
            raise PoleGuardError(f"search window ({lo:g}, {hi:g}) contains the pole at {pole:g}")

    grid = np.linspace(lo, hi, coarse_points)
    curve = squeezing_spectrum(e, theta, grid, sign=sign)
    values = curve.values
    idx = int(np.argmin(values))
    omega_c, s_c = float(curve.omega[idx]), float(values[idx])
    regime_ok = low_excitation_ok(e, regime_margin)

    if s_c >= 1 - tolerance:
        logger.debug("No sub-unity bracket in ({}, {}): coarse minimum {}", lo, hi, s_c)
        return MinimumRecord(omega_min=omega_c, s_min=s_c, entangled=False, flat=True, regime_ok=regime_ok)

    left = float(curve.omega[max(idx - 1, 0)])
    right = float(curve.omega[min(idx + 1, len(curve.omega) - 1)])
    res = minimize_scalar(
        lambda w: spectrum_value(e, w, theta, sign),
        bounds=(left, right),
        method="bounded",
        options={"xatol": xatol},
    )
    omega_r, s_r = float(res.x), float(res.fun)
    if s_r > s_c:
        omega_r, s_r = omega_c, s_c
    logger.debug("Refined minimum S={} at ω={} (coarse {} at {})", s_r, omega_r, s_c, omega_c)
    return MinimumRecord(
        omega_min=omega_r, s_min=s_r, entangled=s_r < 1 - tolerance, flat=False, regime_ok=regime_ok
    )
