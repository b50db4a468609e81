from .langevin import bogoliubov_residual, drift_matrix, pole_mask, scattering_array, scattering_matrix
from .squeezing import (
    approx_spectrum,
    approx_values,
    default_grid,
    quadrature_noise,
    squeezing_spectrum,
    verdict,
)

__all__ = [
    "approx_spectrum",
    "approx_values",
    "bogoliubov_residual",
    "default_grid",
    "drift_matrix",
    "pole_mask",
    "quadrature_noise",
    "scattering_array",
    "scattering_matrix",
    "squeezing_spectrum",
    "verdict",
]
