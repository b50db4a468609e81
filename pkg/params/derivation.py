from __future__ import annotations

import math
from typing import List, Optional

from loguru import logger

from errors import ParameterError
from models import EffectiveParams, PhysicalParams, RegimeCheck, RegimeReport

DEFAULT_MARGIN = 10.0


def derive_effective(p: PhysicalParams) -> EffectiveParams:
    """Adiabatically eliminate level |3> and the mode splitting.

    gⱼ = λⱼΩⱼ/Δ, ω̃ = ω21 + (Ω1² − Ω2²)/Δ and ω′ = ω̃ − ν.
    """
    if p.delta == 0:
        raise ParameterError("pump detuning Δ must be non-zero")
    g1 = p.lambda1 * p.omega1cap / p.delta
    g2 = p.lambda2 * p.omega2cap / p.delta
    omega_tilde = p.omega21 + (p.omega1cap**2 - p.omega2cap**2) / p.delta
    omega_prime = omega_tilde - p.nu
    if not omega_prime > 0:
        raise ParameterError(f"effective oscillator frequency not positive (ω′={omega_prime:g} {p.unit})")
    logger.debug("Derived g1={} g2={} ω′={} [{}]", g1, g2, omega_prime, p.unit)
    return EffectiveParams(
        g1=g1,
        g2=g2,
        omega_prime=omega_prime,
        kappa1=p.kappa1,
        kappa2=p.kappa2,
        n_atoms=p.n_atoms,
        unit=p.unit,
    )


def effective_from_direct(
    g1: float,
    g2: float,
    omega_prime: float,
    kappa1: float,
    kappa2: float,
    n_atoms: int,
    unit: str = "g",
) -> EffectiveParams:
    if not omega_prime > 0:
        raise ParameterError(f"effective oscillator frequency not positive (ω′={omega_prime:g} {unit})")
    if n_atoms < 1:
        raise ParameterError(f"n_atoms must be at least 1, got {n_atoms}")
    return EffectiveParams(
        g1=g1, g2=g2, omega_prime=omega_prime, kappa1=kappa1, kappa2=kappa2, n_atoms=int(n_atoms), unit=unit
    )


def _check(name: str, inequality: str, lhs: float, rhs: float, margin: float) -> RegimeCheck:
    ratio = math.inf if rhs == 0 else abs(lhs) / abs(rhs)
    return RegimeCheck(
        name=name, inequality=inequality, lhs=lhs, rhs=rhs, ratio=ratio, margin=margin, passed=ratio >= margin
    )


def validate_regimes(
    p: Optional[PhysicalParams],
    e: EffectiveParams,
    margin: float = DEFAULT_MARGIN,
) -> RegimeReport:
    """Check every large-ratio assumption behind the effective model.

    `p` may be None when the model parameters were given directly; the
    level-|3> elimination check is then skipped. The pair check compares
    ω′ with g1·g2·N as numbers in the declared unit.
    """
    checks: List[RegimeCheck] = []
    if p is not None:
        checks.append(
            _check(
                "adiabatic_elimination",
                "Δ ≫ max(Ω1, Ω2, λ1, λ2)",
                p.delta,
                max(abs(p.omega1cap), abs(p.omega2cap), abs(p.lambda1), abs(p.lambda2)),
                margin,
            )
        )
    sqrt_n = math.sqrt(e.n_atoms)
    checks.append(_check("low_excitation_1", "ω′ ≫ g1·√N", e.omega_prime, abs(e.g1) * sqrt_n, margin))
    checks.append(_check("low_excitation_2", "ω′ ≫ g2·√N", e.omega_prime, abs(e.g2) * sqrt_n, margin))
    checks.append(_check("large_detuning_pair", "ω′ ≫ g1·g2·N", e.omega_prime, abs(e.pair_coupling), margin))

    report = RegimeReport(margin=margin, checks=checks)
    for c in report.checks:
        if not c.passed:
            logger.warning("Regime check {} failed: {} (ratio {:.3g} < {:g})", c.name, c.inequality, c.ratio, margin)
    return report


def experiment_preset(eta: float = 1.0) -> PhysicalParams:
    """Cavity-BEC experiment numbers, with Ωⱼ = η·λⱼ and Δ = 10·λⱼ.

    Rates are stored as 2π × (frequency in MHz); the unit label carries the
    convention. η between 1 and 4 moves κ/g from about 1.2 to about 0.3.
    """
    if not 1.0 <= eta <= 4.0:
        logger.warning("η={} is outside the experimentally accessible range [1, 4]", eta)
    lam = 2 * math.pi * 10.6
    return PhysicalParams(
        lambda1=lam,
        lambda2=lam,
        omega1cap=eta * lam,
        omega2cap=eta * lam,
        delta=10 * lam,
        omega21=1.5e4,
        nu=5.0e3,
        kappa1=2 * math.pi * 1.3,
        kappa2=2 * math.pi * 1.3,
        n_atoms=10_000,
        unit="MHz",
    )


def rescale(e: EffectiveParams, s: float) -> EffectiveParams:
    if not s > 0:
        raise ParameterError(f"scale factor must be positive, got {s}")
    return EffectiveParams(
        g1=e.g1 * s,
        g2=e.g2 * s,
        omega_prime=e.omega_prime * s,
        kappa1=e.kappa1 * s,
        kappa2=e.kappa2 * s,
        n_atoms=e.n_atoms,
        unit=f"{e.unit}*{s:g}",
    )
