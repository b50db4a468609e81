"""Frequency-domain solution of the linearised cavity Langevin equations.

The condensate mode b carries no input noise, so it is removed exactly:
b(ω) = √N(g1 a1(ω) + g2 a2†(ω)) / (ω′ − ω). What is left is a 2×2 system
M(ω)·(a1, a2†) = −D·(a1_in, a2_in†) with D = diag(√2κ1, √2κ2).
"""

from __future__ import annotations

from typing import Union

import numpy as np
from loguru import logger

from errors import ModelError, PoleGuardError
from models import EffectiveParams, ScatteringMatrix

DEFAULT_POLE_GUARD = 1e-6
# above this the 2x2 drift matrix is treated as numerically singular
_SINGULAR_CONDITION = 1e12

ArrayLike = Union[float, np.ndarray]


def pole_mask(e: EffectiveParams, omega: ArrayLike, guard: float = DEFAULT_POLE_GUARD) -> np.ndarray:
    """True where ω is far enough from the undamped pole at ω′."""
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    return np.abs(w - e.omega_prime) > guard * e.omega_prime


def drift_matrix(e: EffectiveParams, omega: ArrayLike, flip_offdiagonal: bool = False) -> np.ndarray:
    """M(ω) stacked along the leading axis, shape (n, 2, 2)."""
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    detuning = e.omega_prime - w
    shift1 = e.g1**2 * e.n_atoms / detuning
    shift2 = e.g2**2 * e.n_atoms / detuning
    cross = e.pair_coupling / detuning

    m = np.empty(w.shape + (2, 2), dtype=complex)
    m[..., 0, 0] = e.kappa1 - 1j * w - 1j * shift1
    m[..., 0, 1] = -1j * cross
    # a2† obeys the conjugate equation, hence +i on the lower row
    m[..., 1, 0] = (-1j if flip_offdiagonal else 1j) * cross
    m[..., 1, 1] = e.kappa2 - 1j * w + 1j * shift2
    return m


def scattering_array(
    e: EffectiveParams,
    omega: ArrayLike,
    input_sign: int = -1,
    flip_offdiagonal: bool = False,
    pole_guard: float = DEFAULT_POLE_GUARD,
) -> np.ndarray:
    """A(ω) for every grid point, shape (n, 2, 2).

    `input_sign` is the sign of the √(2κ)a_in term in the Langevin equation;
    the output relation is chosen to match, so +1 only flips the global sign.
    """
    if input_sign not in (1, -1):
        raise ValueError("input_sign must be +1 or -1")
    w = np.atleast_1d(np.asarray(omega, dtype=float))
    ok = pole_mask(e, w, pole_guard)
    if not ok.all():
        bad = w[~ok][0]
        raise PoleGuardError(f"ω={bad:g} lies within {pole_guard:g}·ω′ of the pole at ω′={e.omega_prime:g}")

    m = drift_matrix(e, w, flip_offdiagonal=flip_offdiagonal)
    det = m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    if np.any(det == 0):
        raise ModelError("drift matrix is singular on the requested grid")

    inv = np.empty_like(m)
    inv[..., 0, 0] = m[..., 1, 1] / det
    inv[..., 0, 1] = -m[..., 0, 1] / det
    inv[..., 1, 0] = -m[..., 1, 0] / det
    inv[..., 1, 1] = m[..., 0, 0] / det

    d = np.sqrt(2 * np.array([e.kappa1, e.kappa2]))
    loop = inv * np.outer(d, d)
    a = np.eye(2) - loop
    return -input_sign * a


def scattering_matrix(
    e: EffectiveParams,
    omega: float,
    input_sign: int = -1,
    flip_offdiagonal: bool = False,
    pole_guard: float = DEFAULT_POLE_GUARD,
) -> ScatteringMatrix:
    a = scattering_array(e, omega, input_sign=input_sign, flip_offdiagonal=flip_offdiagonal, pole_guard=pole_guard)[0]
    cond = float(np.linalg.cond(drift_matrix(e, omega, flip_offdiagonal=flip_offdiagonal)[0]))
    if cond > _SINGULAR_CONDITION:
        logger.warning("Drift matrix nearly singular at ω={}: condition number {:.3e}", omega, cond)
    return ScatteringMatrix(omega=float(omega), matrix=a, condition_number=cond)


def bogoliubov_residual(a: Union[np.ndarray, ScatteringMatrix]) -> float:
    """Largest violation of the three commutator-preserving identities.

    |A11|² − |A12|² = 1, |A22|² − |A21|² = 1 and A11·A21* − A12·A22* = 0.
    Accepts a single matrix or a stack of shape (n, 2, 2).
    """
    if isinstance(a, ScatteringMatrix):
        a = a.matrix
    a = np.asarray(a)
    a11, a12, a21, a22 = a[..., 0, 0], a[..., 0, 1], a[..., 1, 0], a[..., 1, 1]
    r1 = np.abs(np.abs(a11) ** 2 - np.abs(a12) ** 2 - 1)
    r2 = np.abs(np.abs(a22) ** 2 - np.abs(a21) ** 2 - 1)
    r3 = np.abs(a11 * np.conj(a21) - a12 * np.conj(a22))
    return float(max(np.max(r1), np.max(r2), np.max(r3)))
