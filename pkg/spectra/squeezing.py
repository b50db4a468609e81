from __future__ import annotations

from typing import List, Literal, Optional, Sequence, Tuple

import numpy as np
from loguru import logger

from errors import ApproximationDomainError, ModelError
from models import EffectiveParams, EntanglementVerdict, SpectrumCurve

from .langevin import DEFAULT_POLE_GUARD, pole_mask, scattering_array

Sign = Literal["plus", "minus"]
DEFAULT_TOLERANCE = 1e-9


def _weights(theta: float, sign: Sign) -> Tuple[complex, complex, complex, complex]:
    """Coefficients of (a1o, a1o†, a2o, a2o†) in the homodyne current."""
    down, up = np.exp(-1j * theta), np.exp(1j * theta)
    if sign == "plus":
        return down, up, -down, -up
    if sign == "minus":
        return -1j * down, 1j * up, -1j * down, 1j * up
    raise ValueError(f"sign must be 'plus' or 'minus', got {sign!r}")


def _current_coefficients(here: np.ndarray, there: np.ndarray, w: Sequence[complex]) -> np.ndarray:
    """I(ω) over the input basis [a1_in(ω), a1_in†(ω), a2_in(ω), a2_in†(ω)].

    `here` is A(ω) and `there` is A(−ω); a†(ω) is the adjoint of a(−ω).
    """
    w1, w1c, w2, w2c = w
    c = np.empty(here.shape[:-2] + (4,), dtype=complex)
    c[..., 0] = w1 * here[..., 0, 0] + w2c * here[..., 1, 0]
    c[..., 1] = w1c * np.conj(there[..., 0, 0]) + w2 * np.conj(there[..., 1, 0])
    c[..., 2] = w1c * np.conj(there[..., 0, 1]) + w2 * np.conj(there[..., 1, 1])
    c[..., 3] = w1 * here[..., 0, 1] + w2c * here[..., 1, 1]
    return c


def _raw_noise(a_pos: np.ndarray, a_neg: np.ndarray, theta: float, sign: Sign) -> np.ndarray:
    w = _weights(theta, sign)
    c_pos = _current_coefficients(a_pos, a_neg, w)
    c_neg = _current_coefficients(a_neg, a_pos, w)
    # vacuum inputs only pair a_in(ω) with a_in†(−ω)
    f_pos = c_pos[..., 0] * c_neg[..., 1] + c_pos[..., 2] * c_neg[..., 3]
    f_neg = c_neg[..., 0] * c_pos[..., 1] + c_neg[..., 2] * c_pos[..., 3]
    return np.real(0.5 * (f_pos + f_neg))


def quadrature_noise(a_pos: np.ndarray, a_neg: np.ndarray, theta: float, sign: Sign = "plus") -> np.ndarray:
    """Symmetrised noise of I^θ± normalised to the uncoupled vacuum.

    `a_pos` and `a_neg` are A(ω) and A(−ω), single matrices or (n, 2, 2) stacks.
    """
    eye = np.eye(2, dtype=complex)
    vacuum = _raw_noise(eye, eye, theta, sign)
    return _raw_noise(np.asarray(a_pos), np.asarray(a_neg), theta, sign) / vacuum


def default_grid(e: EffectiveParams, points: int = 2001) -> np.ndarray:
    half = 10 * e.rate_scale
    return np.linspace(-half, half, points)


def squeezing_spectrum(
    e: EffectiveParams,
    theta: float,
    omega_grid: Optional[Sequence[float]] = None,
    sign: Sign = "plus",
    pole_guard: float = DEFAULT_POLE_GUARD,
    input_sign: int = -1,
    flip_offdiagonal: bool = False,
    include_approx: bool = False,
) -> SpectrumCurve:
    """S^θ₊ and S^θ₋ on a frequency grid.

    Points within the pole guard of ±ω′ are dropped and listed in `dropped`.
    """
    omega = default_grid(e) if omega_grid is None else np.asarray(omega_grid, dtype=float)
    keep = pole_mask(e, omega, pole_guard) & pole_mask(e, -omega, pole_guard)
    dropped = [float(w) for w in omega[~keep]]
    if dropped:
        logger.warning("Dropped {} grid point(s) near the pole at ±ω′={}", len(dropped), e.omega_prime)
    omega = omega[keep]

    kwargs = dict(input_sign=input_sign, flip_offdiagonal=flip_offdiagonal, pole_guard=pole_guard)
    a_pos = scattering_array(e, omega, **kwargs)
    a_neg = scattering_array(e, -omega, **kwargs)
    s_plus = quadrature_noise(a_pos, a_neg, theta, "plus")
    s_minus = quadrature_noise(a_pos, a_neg, theta, "minus")

    s_approx = None
    if include_approx:
        s_approx = approx_values(e, omega)

    return SpectrumCurve(
        theta=theta,
        sign=sign,
        omega=omega,
        s_plus=s_plus,
        s_minus=s_minus,
        parameters=e,
        s_approx=s_approx,
        dropped=dropped,
    )


def approx_values(e: EffectiveParams, omega: Sequence[float]) -> np.ndarray:
    """Large-detuning form of S⁰(ω) for equal cavity decay rates.

    1 + 8κ²ω(κ²−ω²)(s₊+s₋)/|z|⁶ + 2κ²(s₊²+s₋²)/|z|⁴ with z = κ − iω and
    s± = g1g2N/(ω′ ∓ ω).
    """
    if e.kappa1 != e.kappa2:
        raise ApproximationDomainError(f"requires κ1 = κ2, got {e.kappa1} and {e.kappa2}")
    w = np.asarray(omega, dtype=float)
    if np.any(np.abs(w) >= e.omega_prime):
        raise ApproximationDomainError(f"requires |ω| < ω′={e.omega_prime:g}")
    kappa = e.kappa1
    z2 = kappa**2 + w**2
    s_up = e.pair_coupling / (e.omega_prime - w)
    s_down = e.pair_coupling / (e.omega_prime + w)
    first = 8 * kappa**2 * w * (kappa**2 - w**2) / z2**3 * (s_up + s_down)
    second = 2 * kappa**2 / z2**2 * (s_up**2 + s_down**2)
    return 1 + first + second


def approx_spectrum(e: EffectiveParams, omega_grid: Optional[Sequence[float]] = None) -> SpectrumCurve:
    omega = default_grid(e) if omega_grid is None else np.asarray(omega_grid, dtype=float)
    values = approx_values(e, omega)
    return SpectrumCurve(
        theta=0.0, omega=omega, s_plus=values, s_minus=values.copy(), parameters=e, s_approx=values.copy()
    )


def _windows(omega: np.ndarray, below: np.ndarray) -> List[Tuple[float, float]]:
    windows: List[Tuple[float, float]] = []
    start: Optional[int] = None
    for i, flag in enumerate(below):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            windows.append((float(omega[start]), float(omega[i - 1])))
            start = None
    if start is not None:
        windows.append((float(omega[start]), float(omega[-1])))
    return windows


def verdict(curve: SpectrumCurve, tolerance: float = DEFAULT_TOLERANCE) -> EntanglementVerdict:
    """Sub-unity windows and minimum of the selected spectrum."""
    values = curve.values
    if values.size == 0:
        raise ModelError("cannot judge an empty spectrum")
    idx = int(np.argmin(values))
    below = values < 1 - tolerance
    return EntanglementVerdict(
        s_min=float(values[idx]),
        omega_min=float(curve.omega[idx]),
        windows=_windows(curve.omega, below),
        entangled=bool(below.any()),
        tolerance=tolerance,
    )
