from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from loguru import logger

from errors import ApproximationDomainError, PoleGuardError
from fockdyn import (
    charge_statistics,
    entanglement_entropy,
    evolve_closed_form,
    evolve_numeric,
    evolve_three_mode,
    fidelity,
    mean_photon_number,
    pair_distribution,
    reduce_to_two_modes,
    su11_coefficients,
)
from models import EffectiveParams, RunConfig, SpectrumCurve, SweepResult
from params import validate_regimes
from sources import resolve_parameters
from spectra import approx_values, squeezing_spectrum, verdict
from sweeps import sweep_atoms, sweep_kappa

from .output import config_header, render_csv, write_plot_script, write_text

# pair probabilities listed in the evolve report
_REPORTED_PAIRS = 10


def _complex(z: complex) -> List[float]:
    return [float(np.real(z)), float(np.imag(z))]


def _dump(report: Dict[str, Any]) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def run_params(cfg: RunConfig, out: Optional[Path] = None) -> Dict[str, Any]:
    physical, e = resolve_parameters(cfg)
    regimes = validate_regimes(physical, e, margin=cfg.regime_margin)
    g = max(abs(e.g1), abs(e.g2))
    report = {
        "effective": e.model_dump(),
        "kappa_over_g": [e.kappa1 / g, e.kappa2 / g] if g else None,
        "regimes": regimes.model_dump(),
        "all_regimes_passed": regimes.all_passed,
    }
    logger.info("g1={:.4g} g2={:.4g} ω′={:.4g} χ={:.4g} [{}]", e.g1, e.g2, e.omega_prime, e.chi, e.unit)
    write_text(_dump(report), out)
    return report


def spectrum_grid(cfg: RunConfig, scale: float) -> np.ndarray:
    opts = cfg.spectrum
    lo = -10 * scale if opts.omega_min is None else opts.omega_min
    hi = 10 * scale if opts.omega_max is None else opts.omega_max
    return np.linspace(lo, hi, opts.omega_points)


def run_spectrum(cfg: RunConfig, out: Optional[Path] = None, plot_script: Optional[Path] = None) -> SpectrumCurve:
    _, e = resolve_parameters(cfg)
    opts = cfg.spectrum
    grid = spectrum_grid(cfg, e.rate_scale)
    curve = squeezing_spectrum(e, opts.theta, grid, pole_guard=opts.pole_guard)
    if curve.omega.size == 0:
        raise PoleGuardError(f"every grid point lies within the pole guard of ±ω′={e.omega_prime:g}")

    notes = [f"pole-guarded row omitted at omega={w!r}" for w in curve.dropped]
    columns = ["omega", "S_plus", "S_minus"]
    if opts.include_approx:
        try:
            curve = curve.model_copy(update={"s_approx": approx_values(e, curve.omega)})
            columns.append("S_approx")
        except ApproximationDomainError as exc:
            logger.warning("Skipping S_approx column: {}", exc)
            notes.append(f"S_approx omitted: {exc}")

    v = verdict(curve)
    logger.info("S_min={:.6g} at ω={:.6g}; entangled={}", v.s_min, v.omega_min, v.entangled)

    rows = []
    for i, w in enumerate(curve.omega):
        row = [float(w), float(curve.s_plus[i]), float(curve.s_minus[i])]
        if "S_approx" in columns:
            row.append(float(curve.s_approx[i]))
        rows.append(row)
    write_text(render_csv(columns, rows, header=config_header(cfg), notes=notes), out)

    if plot_script is not None:
        write_plot_script(plot_script, out if out is not None else Path("spectrum.csv"), opts.theta)
    return curve


def run_sweep(cfg: RunConfig, out: Optional[Path] = None) -> SweepResult:
    _, e = resolve_parameters(cfg)
    opts = cfg.sweep
    sweep = sweep_kappa if opts.parameter == "kappa" else sweep_atoms
    result = sweep(
        e,
        opts.grid,
        theta=opts.theta,
        half_width=opts.half_width,
        negative_only=opts.negative_only,
        coarse_points=opts.coarse_points,
        regime_margin=cfg.regime_margin,
        workers=opts.workers,
    )
    first = "kappa" if opts.parameter == "kappa" else "N"
    rows = [
        [r.value if opts.parameter == "kappa" else int(r.value), r.omega_min, r.s_min, str(r.entangled).lower()]
        for r in result.records
    ]
    notes = [f"low-excitation regime violated at {first}={r.value:g}" for r in result.records if not r.regime_ok]
    write_text(render_csv([first, "omega_min", "S_min", "entangled"], rows, header=config_header(cfg), notes=notes), out)
    return result


def _low_excitation_ratio(e: EffectiveParams) -> float:
    drive = max(abs(e.g1), abs(e.g2)) * math.sqrt(e.n_atoms)
    return math.inf if drive == 0 else e.omega_prime / drive


def run_evolve(cfg: RunConfig, out: Optional[Path] = None) -> Dict[str, Any]:
    _, e = resolve_parameters(cfg)
    opts = cfg.evolve
    coeffs = su11_coefficients(e, opts.tau)
    closed = evolve_closed_form(e, opts.tau, opts.n_max, threshold=opts.tail_threshold)
    numeric = evolve_numeric(e, opts.tau, opts.n_max, threshold=opts.tail_threshold)
    n1, n2 = mean_photon_number(closed)
    report: Dict[str, Any] = {
        "tau": opts.tau,
        "chi_tau": e.chi * opts.tau,
        "Gamma": _complex(coeffs.Gamma),
        "Gamma_tilde": _complex(coeffs.Gamma_tilde),
        "beta": _complex(coeffs.beta),
        "pair_distribution": [float(p) for p in pair_distribution(closed)[:_REPORTED_PAIRS]],
        "mean_photons": [n1, n2],
        "entropy": entanglement_entropy(closed),
        "fidelity_vs_oracle": fidelity(closed, numeric),
        "oracle_norm": numeric.norm,
        "tail_mass": closed.tail_mass,
        "converged": closed.converged and numeric.converged,
    }
    if opts.three_mode:
        full = evolve_three_mode(e, opts.tau, opts.truncations, threshold=opts.tail_threshold)
        mean, var = charge_statistics(full)
        eliminated = evolve_closed_form(e, opts.tau, opts.truncations[0], sign=-1, threshold=opts.tail_threshold)
        report["three_mode"] = {
            "truncations": list(opts.truncations),
            "tail_mass": list(full.tail_mass),
            "charge_mean": mean,
            "charge_variance": var,
            "reduced_fidelity": fidelity(eliminated, reduce_to_two_modes(full)),
            "large_detuning_ratio": _low_excitation_ratio(e),
        }
    logger.info("τ={} Γ={} entropy={:.6g}", opts.tau, coeffs.Gamma, report["entropy"])
    write_text(_dump(report), out)
    return report
