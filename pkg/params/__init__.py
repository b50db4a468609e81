"""Physical-to-effective parameter mapping and regime checks."""

from .derivation import (
    derive_effective,
    effective_from_direct,
    experiment_preset,
    rescale,
    validate_regimes,
)

__all__ = [
    "derive_effective",
    "effective_from_direct",
    "experiment_preset",
    "rescale",
    "validate_regimes",
]
