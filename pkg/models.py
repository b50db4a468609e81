from __future__ import annotations

from typing import List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator


class PhysicalParams(BaseModel):
    """Raw cavity-BEC quantities, all rates in the declared unit."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    lambda1: float
    lambda2: float
    omega1cap: float  # pump Rabi frequency on |1>-|3>
    omega2cap: float  # pump Rabi frequency on |2>-|3>
    delta: float  # Δ = ω31 − ωL
    omega21: float
    nu: float  # ω1,2 = ωL ± ν
    kappa1: float = Field(gt=0)
    kappa2: float = Field(gt=0)
    n_atoms: int = Field(ge=1)
    unit: str = "MHz"


class EffectiveParams(BaseModel):
    """Model-level parameters; every downstream computation consumes these."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    g1: float
    g2: float
    omega_prime: float = Field(gt=0)
    kappa1: float = Field(gt=0)
    kappa2: float = Field(gt=0)
    # 0 is allowed so an empty condensate can be swept as a baseline
    n_atoms: int = Field(ge=0)
    unit: str = "g"

    @computed_field  # type: ignore[prop-decorator]
    @property
    def chi1(self) -> float:
        return self.g1**2 * self.n_atoms / self.omega_prime

    @computed_field  # type: ignore[prop-decorator]
    @property
    def chi2(self) -> float:
        return self.g2**2 * self.n_atoms / self.omega_prime

    @computed_field  # type: ignore[prop-decorator]
    @property
    def chi(self) -> float:
        return self.g1 * self.g2 * self.n_atoms / self.omega_prime

    @property
    def pair_coupling(self) -> float:
        """g1·g2·N, the collective pair-creation strength."""
        return self.g1 * self.g2 * self.n_atoms

    @property
    def rate_scale(self) -> float:
        """Largest of κ and g, used to size default frequency windows."""
        return max(self.kappa1, self.kappa2, abs(self.g1), abs(self.g2))


class RegimeCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    inequality: str
    lhs: float
    rhs: float
    ratio: float
    margin: float
    passed: bool


class RegimeReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    margin: float
    checks: List[RegimeCheck]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> RegimeCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


class SU11Coefficients(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma: complex
    gamma_tilde: complex
    beta: complex
    Gamma: complex
    Gamma_tilde: complex


class _ArrayModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class TwoModeState(_ArrayModel):
    """Pure state of (a1, a2); amplitudes[m, n] multiplies |m, n>."""

    n_max: int
    amplitudes: np.ndarray
    tail_mass: float
    threshold: float = 1e-12

    @property
    def converged(self) -> bool:
        return self.tail_mass < self.threshold

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))


class ThreeModeState(_ArrayModel):
    """Pure state of (a1, a2, b); amplitudes[m, n, k] multiplies |m, n, k>."""

    truncations: Tuple[int, int, int]
    amplitudes: np.ndarray
    tail_mass: Tuple[float, float, float]
    threshold: float = 1e-12

    @property
    def converged(self) -> bool:
        return max(self.tail_mass) < self.threshold


class ReducedTwoModeState(_ArrayModel):
    """Density operator of (a1, a2) after tracing out b, flattened row-major."""

    dims: Tuple[int, int]
    density: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.density)))


class ScatteringMatrix(_ArrayModel):
    """A(ω): (a1_out, a2_out†)(ω) = A(ω) · (a1_in, a2_in†)(ω)."""

    omega: float
    matrix: np.ndarray
    condition_number: float


class SpectrumCurve(_ArrayModel):
    theta: float
    sign: Literal["plus", "minus"] = "plus"
    omega: np.ndarray
    s_plus: np.ndarray
    s_minus: np.ndarray
    parameters: EffectiveParams
    s_approx: Optional[np.ndarray] = None
    dropped: List[float] = Field(default_factory=list)

    @property
    def values(self) -> np.ndarray:
        return self.s_plus if self.sign == "plus" else self.s_minus


class EntanglementVerdict(BaseModel):
    model_config = ConfigDict(frozen=True)

    s_min: float
    omega_min: float
    windows: List[Tuple[float, float]]
    entangled: bool
    tolerance: float


class MinimumRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega_min: float
    s_min: float
    entangled: bool
    flat: bool
    regime_ok: bool = True


class SweepRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    value: float
    omega_min: float
    s_min: float
    entangled: bool
    regime_ok: bool
    wall_time: float


class SweepResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    parameter: Literal["kappa", "n_atoms"]
    theta: float
    grid: List[float]
    records: List[SweepRecord]

    @model_validator(mode="after")
    def _one_record_per_point(self) -> "SweepResult":
        if len(self.grid) != len(self.records):
            raise ValueError("sweep must hold one record per grid point")
        return self


class ApproxComparison(_ArrayModel):
    omega: np.ndarray
    s_exact: np.ndarray
    s_approx: np.ndarray

    @property
    def deviation(self) -> np.ndarray:
        return np.abs(self.s_exact - self.s_approx)

    @property
    def max_deviation(self) -> float:
        return float(np.max(self.deviation)) if self.omega.size else 0.0

    @property
    def mean_deviation(self) -> float:
        return float(np.mean(self.deviation)) if self.omega.size else 0.0


# ---- run configuration ---------------------------------------------------


class SpectrumOptions(BaseModel):
    theta: float = 0.0
    omega_min: Optional[float] = None  # defaults to −10·max(κ, g)
    omega_max: Optional[float] = None
    omega_points: int = Field(default=2001, ge=2)
    include_approx: bool = False
    pole_guard: float = Field(default=1e-6, gt=0)


class SweepOptions(BaseModel):
    parameter: Literal["kappa", "n_atoms"] = "kappa"
    grid: List[float] = Field(default_factory=lambda: [0.25, 0.5, 1.0, 2.0, 4.0, 10.0], min_length=1)
    theta: float = 0.0
    half_width: Optional[float] = None
    negative_only: bool = False
    coarse_points: int = Field(default=2001, ge=3)
    workers: int = Field(default=1, ge=1)


class EvolveOptions(BaseModel):
    tau: float = Field(default=0.0, ge=0)
    n_max: int = Field(default=40, ge=1)
    three_mode: bool = False
    truncations: Tuple[int, int, int] = (14, 14, 4)
    tail_threshold: float = Field(default=1e-12, gt=0)


class ValidationOptions(BaseModel):
    flip_offdiagonal: bool = False
    grid_points: int = Field(default=2001, ge=3)


class RunConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    physical: Optional[PhysicalParams] = None
    effective: Optional[EffectiveParams] = None
    regime_margin: float = Field(default=10.0, gt=0)
    spectrum: SpectrumOptions = Field(default_factory=SpectrumOptions)
    sweep: SweepOptions = Field(default_factory=SweepOptions)
    evolve: EvolveOptions = Field(default_factory=EvolveOptions)
    validation: ValidationOptions = Field(default_factory=ValidationOptions)

    @model_validator(mode="after")
    def _exactly_one_parameter_block(self) -> "RunConfig":
        if (self.physical is None) == (self.effective is None):
            raise ValueError("config needs exactly one of 'physical' or 'effective'")
        return self


class ValidationCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    value: float
    detail: str
    report_only: bool = False
