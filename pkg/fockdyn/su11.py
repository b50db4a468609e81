"""Closed-form evolution of the two-mode effective Hamiltonian.

On the pair sector reached from |0,0> the effective Hamiltonian
χ1 a1†a1 + χ2 a2a2† + χ(a1†a2† + a1a2) equals (χ1+χ2)K3 + χ(K+ + K−) up to a
constant, with K3 = ½(a1†a1 + a2a2†) and K+ = a1†a2†. The ordering theorem
factorises exp(γ̃K3 + γ(K+ + K−)) as exp(ΓK+) exp(ln Γ̃ K3) exp(ΓK−).
"""

from __future__ import annotations

from typing import Tuple

import numpy as np

from models import EffectiveParams, SU11Coefficients

# below this |β| the sinh/β and cosh factors come from their Taylor series
SERIES_SWITCH = 1e-6


def _even_factors(beta: complex) -> Tuple[complex, complex]:
    """Return (sinh β / β, cosh β); both are even in β."""
    if abs(beta) < SERIES_SWITCH:
        b2 = beta * beta
        return 1 + b2 / 6 + b2 * b2 / 120, 1 + b2 / 2 + b2 * b2 / 24
    return complex(np.sinh(beta) / beta), complex(np.cosh(beta))


def disentangle(gamma: complex, gamma_tilde: complex, beta: complex) -> Tuple[complex, complex]:
    """Γ and Γ̃ for a given branch of β (the result does not depend on it)."""
    shc, ch = _even_factors(beta)
    denom = ch - 0.5 * gamma_tilde * shc
    Gamma = gamma * shc / denom
    Gamma_tilde = denom ** (-2)
    return complex(Gamma), complex(Gamma_tilde)


def su11_coefficients(e: EffectiveParams, tau: float, sign: int = 1) -> SU11Coefficients:
    """γ, γ̃, β, Γ, Γ̃ for evolution time τ (in 1/rate-unit).

    sign = −1 evolves under −H_eff, the form produced by eliminating b from
    the three-mode Hamiltonian.
    """
    if tau < 0:
        raise ValueError(f"evolution time must be non-negative, got {tau}")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    gamma = -1j * sign * e.chi * tau
    gamma_tilde = -1j * sign * (e.chi1 + e.chi2) * tau
    beta = complex(np.sqrt(complex(gamma_tilde**2 / 4 - gamma**2)))
    Gamma, Gamma_tilde = disentangle(gamma, gamma_tilde, beta)
    return SU11Coefficients(
        gamma=gamma, gamma_tilde=gamma_tilde, beta=beta, Gamma=Gamma, Gamma_tilde=Gamma_tilde
    )
