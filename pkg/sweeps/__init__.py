from .minimize import default_window, low_excitation_ok, min_squeezing, spectrum_value
from .runner import compare_approx, sweep_atoms, sweep_kappa

__all__ = [
    "compare_approx",
    "default_window",
    "low_excitation_ok",
    "min_squeezing",
    "spectrum_value",
    "sweep_atoms",
    "sweep_kappa",
]
