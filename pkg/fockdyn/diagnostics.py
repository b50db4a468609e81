from __future__ import annotations

from typing import Tuple, Union

import numpy as np
from scipy import linalg
from scipy.special import entr

from models import ReducedTwoModeState, ThreeModeState, TwoModeState

State = Union[TwoModeState, ReducedTwoModeState, np.ndarray]

# amplitude mass allowed off the |n,n> diagonal before a state counts as non-pair
_PAIR_TOLERANCE = 1e-10


def reduce_to_two_modes(state: ThreeModeState) -> ReducedTwoModeState:
    """Trace the condensate mode b out of a three-mode state."""
    d1, d2, db = state.amplitudes.shape
    psi = state.amplitudes.reshape(d1 * d2, db)
    rho = psi @ psi.conj().T
    return ReducedTwoModeState(dims=(d1, d2), density=rho)


def pair_distribution(state: TwoModeState) -> np.ndarray:
    """P(n) = |c_{n,n}|², the weight of each photon-pair number."""
    return np.abs(np.diagonal(state.amplitudes)) ** 2


def off_pair_mass(state: TwoModeState) -> float:
    prob = np.abs(state.amplitudes) ** 2
    return float(prob.sum() - np.trace(prob))


def mean_photon_number(state: TwoModeState) -> Tuple[float, float]:
    """(<n1>, <n2>) for a pure two-mode state."""
    prob = np.abs(state.amplitudes) ** 2
    n = np.arange(prob.shape[0])
    m = np.arange(prob.shape[1])
    return float(prob.sum(axis=1) @ n), float(prob.sum(axis=0) @ m)


def photon_number_difference(state: TwoModeState) -> float:
    """<n1 − n2>, conserved at zero by pair creation from vacuum."""
    prob = np.abs(state.amplitudes) ** 2
    diff = np.subtract.outer(np.arange(prob.shape[0]), np.arange(prob.shape[1]))
    return float((prob * diff).sum() / prob.sum())


def charge_statistics(state: ThreeModeState) -> Tuple[float, float]:
    """Mean and variance of n_b + n1 − n2; a state from vacuum has (0, 0)."""
    prob = np.abs(state.amplitudes) ** 2
    n1, n2, nb = (np.arange(k + 1) for k in state.truncations)
    charge = nb[None, None, :] + n1[:, None, None] - n2[None, :, None]
    total = prob.sum()
    mean = float((prob * charge).sum() / total)
    var = float((prob * (charge - mean) ** 2).sum() / total)
    return mean, var


def entanglement_entropy(state: TwoModeState) -> float:
    """Von Neumann entropy (nats) of either mode of a pure two-mode state."""
    if off_pair_mass(state) < _PAIR_TOLERANCE:
        p = pair_distribution(state)
    else:
        p = linalg.svdvals(state.amplitudes) ** 2
    p = p / p.sum()
    return float(np.sum(entr(p)))


def _as_operator(state: State) -> Tuple[np.ndarray, bool]:
    """Flatten to a ket (pure) or a density matrix (mixed).

    A bare array is read as an amplitude matrix c[m, n].
    """
    if isinstance(state, ReducedTwoModeState):
        return state.density, False
    if isinstance(state, TwoModeState):
        return state.amplitudes.reshape(-1), True
    return np.asarray(state, dtype=complex).reshape(-1), True


def _dims(state: State) -> Tuple[int, int]:
    if isinstance(state, TwoModeState):
        return state.amplitudes.shape  # type: ignore[return-value]
    if isinstance(state, ReducedTwoModeState):
        return state.dims
    arr = np.asarray(state)
    return arr.shape  # type: ignore[return-value]


def _pad_ket(psi: np.ndarray, dims: Tuple[int, int], target: Tuple[int, int]) -> np.ndarray:
    out = np.zeros(target, dtype=complex)
    out[: dims[0], : dims[1]] = psi.reshape(dims)
    return out.reshape(-1)


def _pad_density(rho: np.ndarray, dims: Tuple[int, int], target: Tuple[int, int]) -> np.ndarray:
    r = rho.reshape(dims[0], dims[1], dims[0], dims[1])
    out = np.zeros(target + target, dtype=complex)
    out[: dims[0], : dims[1], : dims[0], : dims[1]] = r
    n = target[0] * target[1]
    return out.reshape(n, n)


def fidelity(a: State, b: State) -> float:
    """Fidelity between two-mode states on possibly different truncations.

    Smaller Fock spaces are zero-padded. Pure/pure gives |<a|b>|², pure/mixed
    <ψ|ρ|ψ> and mixed/mixed the Uhlmann fidelity (tr√(√ρ σ √ρ))².
    """
    op_a, pure_a = _as_operator(a)
    op_b, pure_b = _as_operator(b)
    dims_a, dims_b = _dims(a), _dims(b)
    target = (max(dims_a[0], dims_b[0]), max(dims_a[1], dims_b[1]))

    def pad(op: np.ndarray, pure: bool, dims: Tuple[int, int]) -> np.ndarray:
        return _pad_ket(op, dims, target) if pure else _pad_density(op, dims, target)

    op_a, op_b = pad(op_a, pure_a, dims_a), pad(op_b, pure_b, dims_b)
    if pure_a and pure_b:
        return float(abs(np.vdot(op_a, op_b)) ** 2)
    if pure_a or pure_b:
        psi, rho = (op_a, op_b) if pure_a else (op_b, op_a)
        return float(np.real(np.vdot(psi, rho @ psi)))
    root = linalg.sqrtm(op_a)
    inner = linalg.sqrtm(root @ op_b @ root)
    return float(np.real(np.trace(inner)) ** 2)
