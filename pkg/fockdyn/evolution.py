from __future__ import annotations

from typing import Sequence, Tuple

import numpy as np
from loguru import logger
from scipy import linalg, sparse
from scipy.sparse.linalg import expm_multiply

from models import EffectiveParams, ThreeModeState, TwoModeState

from .su11 import su11_coefficients

DEFAULT_TAIL_THRESHOLD = 1e-12


def annihilation(n_max: int) -> sparse.csr_matrix:
    """Truncated bosonic lowering operator on {|0>, ..., |n_max>}."""
    return sparse.diags(np.sqrt(np.arange(1, n_max + 1, dtype=float)), offsets=1, format="csr")


def _embed(ops: Sequence[sparse.spmatrix]) -> sparse.csr_matrix:
    out = ops[0]
    for op in ops[1:]:
        out = sparse.kron(out, op, format="csr")
    return out


def _vacuum(dim: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[0] = 1.0
    return psi


def _propagate(h: sparse.spmatrix, tau: float, psi0: np.ndarray) -> np.ndarray:
    if tau == 0:
        return psi0.copy()
    return expm_multiply(-1j * tau * sparse.csc_matrix(h), psi0)


def _propagate_dense(h: sparse.spmatrix, tau: float, psi0: np.ndarray) -> np.ndarray:
    """exp(−iHτ)ψ0 through the eigenbasis of a Hermitian H.

    Cost does not grow with ‖H‖τ; ω′τ is large at the usual operating points.
    """
    if tau == 0:
        return psi0.copy()
    w, v = linalg.eigh(h.toarray())
    return v @ (np.exp(-1j * tau * w) * (v.conj().T @ psi0))


def _warn_unconverged(label: str, tail: float, threshold: float) -> None:
    if tail >= threshold:
        logger.warning("{} truncation unconverged: tail mass {:.3e} >= {:.1e}", label, tail, threshold)


def two_mode_hamiltonian(e: EffectiveParams, n_max: int, sign: int = 1) -> sparse.csr_matrix:
    """χ1 a1†a1 + χ2 a2a2† + χ(a1†a2† + a1a2) on the truncated product space."""
    a = annihilation(n_max)
    eye = sparse.identity(n_max + 1, format="csr")
    a1 = _embed([a, eye])
    a2 = _embed([eye, a])
    n1 = a1.conj().T @ a1
    n2 = a2.conj().T @ a2
    pair = a1.conj().T @ a2.conj().T
    # a2 a2† written as n2 + 1 so the boundary row keeps its diagonal
    h = e.chi1 * n1 + e.chi2 * (n2 + sparse.identity(n1.shape[0])) + e.chi * (pair + pair.conj().T)
    return sign * sparse.csr_matrix(h)


def evolve_closed_form(
    e: EffectiveParams,
    tau: float,
    n_max: int,
    sign: int = 1,
    threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> TwoModeState:
    """Pair state Γ̃^(1/2) Σ Γⁿ|n,n>, renormalised on the truncated space."""
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    c = su11_coefficients(e, tau, sign=sign)
    n = np.arange(n_max + 1)
    powers = np.concatenate(([1.0 + 0j], np.cumprod(np.full(n_max, c.Gamma))))
    diagonal = np.sqrt(c.Gamma_tilde) * powers
    diagonal = diagonal / np.linalg.norm(diagonal)
    amplitudes = np.zeros((n_max + 1, n_max + 1), dtype=complex)
    amplitudes[n, n] = diagonal
    tail = float(abs(c.Gamma) ** (2 * n_max))
    _warn_unconverged("closed-form", tail, threshold)
    return TwoModeState(n_max=n_max, amplitudes=amplitudes, tail_mass=tail, threshold=threshold)


def evolve_numeric(
    e: EffectiveParams,
    tau: float,
    n_max: int,
    sign: int = 1,
    threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> TwoModeState:
    """Apply exp(−iH_eff τ) to |0,0> by the action of the sparse matrix exponential
    (truncated Taylor series with scaling, scipy expm_multiply).

    No renormalisation: the returned norm is the unitarity check.
    """
    if tau < 0:
        raise ValueError(f"evolution time must be non-negative, got {tau}")
    if n_max < 1:
        raise ValueError(f"n_max must be at least 1, got {n_max}")
    dim = n_max + 1
    h = two_mode_hamiltonian(e, n_max, sign=sign)
    psi = _propagate(h, tau, _vacuum(dim * dim)).reshape(dim, dim)
    prob = np.abs(psi) ** 2
    tail = float(prob[-1, :].sum() + prob[:, -1].sum() - prob[-1, -1])
    _warn_unconverged("numeric two-mode", tail, threshold)
    return TwoModeState(n_max=n_max, amplitudes=psi, tail_mass=tail, threshold=threshold)


def three_mode_hamiltonian(e: EffectiveParams, truncations: Tuple[int, int, int]) -> sparse.csr_matrix:
    """ω′b†b − [√N(g1 a1 + g2 a2†)b† + H.c.] on (a1, a2, b)."""
    n1, n2, nb = truncations
    e1, e2, eb = (sparse.identity(k + 1, format="csr") for k in truncations)
    a1 = _embed([annihilation(n1), e2, eb])
    a2 = _embed([e1, annihilation(n2), eb])
    b = _embed([e1, e2, annihilation(nb)])
    sqrt_n = np.sqrt(e.n_atoms)
    drive = sqrt_n * (e.g1 * a1 + e.g2 * a2.conj().T) @ b.conj().T
    h = e.omega_prime * (b.conj().T @ b) - (drive + drive.conj().T)
    return sparse.csr_matrix(h)


def evolve_three_mode(
    e: EffectiveParams,
    tau: float,
    truncations: Tuple[int, int, int] = (10, 10, 4),
    threshold: float = DEFAULT_TAIL_THRESHOLD,
) -> ThreeModeState:
    if tau < 0:
        raise ValueError(f"evolution time must be non-negative, got {tau}")
    if min(truncations) < 1:
        raise ValueError(f"every truncation must be at least 1, got {truncations}")
    truncations = tuple(int(k) for k in truncations)  # type: ignore[assignment]
    dims = tuple(k + 1 for k in truncations)
    h = three_mode_hamiltonian(e, truncations)
    psi = _propagate_dense(h, tau, _vacuum(int(np.prod(dims)))).reshape(dims)
    prob = np.abs(psi) ** 2
    tails = (
        float(prob[-1, :, :].sum()),
        float(prob[:, -1, :].sum()),
        float(prob[:, :, -1].sum()),
    )
    _warn_unconverged("three-mode", max(tails), threshold)
    return ThreeModeState(truncations=truncations, amplitudes=psi, tail_mass=tails, threshold=threshold)
