"""One-shot invariant suite behind the `validate` command."""

from __future__ import annotations

import math
from typing import Callable, List

import numpy as np
from loguru import logger

from fockdyn import (
    charge_statistics,
    disentangle,
    evolve_closed_form,
    evolve_numeric,
    evolve_three_mode,
    fidelity,
    off_pair_mass,
    reduce_to_two_modes,
)
from models import EffectiveParams, RunConfig, ValidationCheck
from sources import resolve_parameters
from spectra import (
    approx_values,
    bogoliubov_residual,
    default_grid,
    pole_mask,
    scattering_array,
    squeezing_spectrum,
)
from sweeps import compare_approx

THETAS = (0.0, math.pi / 4, math.pi / 2)
SPECTRUM_TOL = 1e-10
VACUUM_TOL = 1e-12
ORACLE_FIDELITY = 1 - 1e-8
ELIMINATION_FIDELITY = 0.99


def _with(e: EffectiveParams, **update) -> EffectiveParams:
    return EffectiveParams.model_validate({**e.model_dump(), **update})


def _large_detuning_point() -> EffectiveParams:
    return EffectiveParams(g1=1.0, g2=1.0, omega_prime=1e5, kappa1=1.0, kappa2=1.0, n_atoms=10_000)


def _strong_coupling_point() -> EffectiveParams:
    return EffectiveParams(g1=1.0, g2=1.0, omega_prime=1e4, kappa1=10.0, kappa2=10.0, n_atoms=10_000)


def _check(name: str, value: float, passed: bool, detail: str, report_only: bool = False) -> ValidationCheck:
    return ValidationCheck(name=name, passed=bool(passed), value=float(value), detail=detail, report_only=report_only)


def vacuum_baseline(e: EffectiveParams, points: int) -> ValidationCheck:
    empty = _with(e, g1=0.0, g2=0.0)
    worst = 0.0
    for theta in THETAS:
        curve = squeezing_spectrum(empty, theta, default_grid(empty, points))
        worst = max(worst, np.max(np.abs(curve.s_plus - 1)), np.max(np.abs(curve.s_minus - 1)))
    return _check("vacuum_baseline", worst, worst <= VACUUM_TOL, f"max |S − 1| = {worst:.3e} with g = 0")


def bogoliubov(e: EffectiveParams, points: int, flip_offdiagonal: bool) -> ValidationCheck:
    worst = 0.0
    for point in (e, _strong_coupling_point(), _large_detuning_point()):
        grid = default_grid(point, points)
        grid = grid[pole_mask(point, grid)]
        a = scattering_array(point, grid, flip_offdiagonal=flip_offdiagonal)
        worst = max(worst, bogoliubov_residual(a))
    detail = f"max identity residual {worst:.3e}" + (" (off-diagonal sign flipped)" if flip_offdiagonal else "")
    return _check("bogoliubov_identities", worst, worst <= SPECTRUM_TOL, detail)


def spectrum_symmetries(e: EffectiveParams, points: int, flip_offdiagonal: bool) -> List[ValidationCheck]:
    grid = default_grid(e, points)
    sign_gap = parity_gap = period_gap = 0.0
    for theta in THETAS:
        curve = squeezing_spectrum(e, theta, grid, flip_offdiagonal=flip_offdiagonal)
        shifted = squeezing_spectrum(e, theta + math.pi, grid, flip_offdiagonal=flip_offdiagonal)
        sign_gap = max(sign_gap, np.max(np.abs(curve.s_plus - curve.s_minus)))
        if curve.omega.size == grid.size:
            parity_gap = max(parity_gap, np.max(np.abs(curve.s_plus - curve.s_plus[::-1])))
        period_gap = max(period_gap, np.max(np.abs(curve.s_plus - shifted.s_plus)))
    return [
        _check("plus_equals_minus", sign_gap, sign_gap <= SPECTRUM_TOL, f"max |S+ − S−| = {sign_gap:.3e}"),
        _check("even_in_frequency", parity_gap, parity_gap <= SPECTRUM_TOL, f"max |S(ω) − S(−ω)| = {parity_gap:.3e}"),
        _check("theta_period_pi", period_gap, period_gap <= SPECTRUM_TOL, f"max |S^θ − S^(θ+π)| = {period_gap:.3e}"),
    ]


def oracle_equivalence() -> List[ValidationCheck]:
    worst_fid, worst_tail, worst_off = 1.0, 0.0, 0.0
    for g1 in (1.0, 2.0):  # χ1 = χ2 and χ1 = 4χ2
        e = EffectiveParams(g1=g1, g2=1.0, omega_prime=100.0, kappa1=1.0, kappa2=1.0, n_atoms=100)
        for chi_tau in (0.1, 0.3, 0.5):
            tau = chi_tau / e.chi
            closed = evolve_closed_form(e, tau, 40)
            numeric = evolve_numeric(e, tau, 40)
            worst_fid = min(worst_fid, fidelity(closed, numeric))
            worst_tail = max(worst_tail, closed.tail_mass, numeric.tail_mass)
            worst_off = max(worst_off, off_pair_mass(numeric))
    return [
        _check(
            "closed_form_oracle",
            worst_fid,
            worst_fid >= ORACLE_FIDELITY and worst_tail < 1e-12,
            f"min fidelity {worst_fid:.12f}, max tail mass {worst_tail:.2e}",
        ),
        _check("pair_superselection", worst_off, worst_off < 1e-12, f"mass off |n,n> = {worst_off:.2e}"),
    ]


def three_mode_checks() -> List[ValidationCheck]:
    # ω′ = 100·g√N, χτ = 0.2
    e = EffectiveParams(g1=1.0, g2=1.0, omega_prime=1000.0, kappa1=1.0, kappa2=1.0, n_atoms=100)
    tau = 0.2 / e.chi
    full = evolve_three_mode(e, tau, (10, 10, 4))
    mean, var = charge_statistics(full)
    reduced = reduce_to_two_modes(full)
    fid = fidelity(evolve_closed_form(e, tau, 10, sign=-1), reduced)
    return [
        _check("conserved_charge", abs(mean), abs(mean) < 1e-10, f"<n_b + n1 − n2> = {mean:.2e}"),
        _check("conserved_charge_variance", var, var < 1e-10, f"Var(n_b + n1 − n2) = {var:.2e}"),
        _check("adiabatic_elimination", fid, fid >= ELIMINATION_FIDELITY, f"reduced-state fidelity {fid:.6f}"),
    ]


def branch_checks() -> List[ValidationCheck]:
    gamma, gamma_tilde = -0.4j, -1.0j  # χ1 ≠ χ2, β purely imaginary
    beta = np.sqrt(complex(gamma_tilde**2 / 4 - gamma**2))
    plus = np.array(disentangle(gamma, gamma_tilde, beta))
    minus = np.array(disentangle(gamma, gamma_tilde, -beta))
    branch_gap = float(np.max(np.abs(plus - minus)))

    a = 0.3
    gamma_c, gamma_tilde_c = -1j * math.sqrt(a * a + 1e-10), -2j * a
    near = np.array(disentangle(gamma_c, gamma_tilde_c, 1e-5))
    limit = np.array(disentangle(gamma_c, gamma_tilde_c, 0.0))
    cont_gap = float(np.max(np.abs(near - limit)))
    return [
        _check("beta_branch_invariance", branch_gap, branch_gap <= 1e-12, f"|Δ(Γ, Γ̃)| under β → −β = {branch_gap:.2e}"),
        _check("beta_continuity", cont_gap, cont_gap <= 1e-9, f"|β| = 1e-5 vs series limit: {cont_gap:.2e}"),
    ]


def approximation_checks(e: EffectiveParams) -> List[ValidationCheck]:
    fig = _large_detuning_point()
    at_zero, at_half = approx_values(fig, [0.0, -0.5])
    checks = [
        _check(
            "approx_formula_values",
            at_half,
            abs(at_zero - 1.04) <= 0.01 and abs(at_half - 0.718) <= 0.02,
            f"S_approx(0) = {at_zero:.4f}, S_approx(−0.5g) = {at_half:.4f}",
        )
    ]
    if e.kappa1 == e.kappa2 and 3 * e.rate_scale < e.omega_prime:
        table = compare_approx(e)
        checks.append(
            _check(
                "approx_deviation",
                table.max_deviation,
                True,
                f"max |S_exact − S_approx| = {table.max_deviation:.4f} over |ω| ≤ 3·max(κ, g)",
                report_only=True,
            )
        )
    return checks


def run_validation(cfg: RunConfig) -> List[ValidationCheck]:
    _, e = resolve_parameters(cfg)
    points = cfg.validation.grid_points
    flip = cfg.validation.flip_offdiagonal
    stages: List[Callable[[], List[ValidationCheck]]] = [
        lambda: [vacuum_baseline(e, points)],
        lambda: [bogoliubov(e, points, flip)],
        lambda: spectrum_symmetries(e, points, flip),
        oracle_equivalence,
        three_mode_checks,
        branch_checks,
        lambda: approximation_checks(e),
    ]
    results: List[ValidationCheck] = []
    for stage in stages:
        for check in stage():
            log = logger.info if check.passed else logger.error
            log("{} {}: {}", "PASS" if check.passed else "FAIL", check.name, check.detail)
            results.append(check)
    return results
