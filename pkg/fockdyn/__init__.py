from .diagnostics import (
    charge_statistics,
    entanglement_entropy,
    fidelity,
    mean_photon_number,
    off_pair_mass,
    pair_distribution,
    photon_number_difference,
    reduce_to_two_modes,
)
from .evolution import (
    evolve_closed_form,
    evolve_numeric,
    evolve_three_mode,
    three_mode_hamiltonian,
    two_mode_hamiltonian,
)
from .su11 import disentangle, su11_coefficients

__all__ = [
    "charge_statistics",
    "disentangle",
    "entanglement_entropy",
    "evolve_closed_form",
    "evolve_numeric",
    "evolve_three_mode",
    "fidelity",
    "mean_photon_number",
    "off_pair_mass",
    "pair_distribution",
    "photon_number_difference",
    "reduce_to_two_modes",
    "su11_coefficients",
    "three_mode_hamiltonian",
    "two_mode_hamiltonian",
]
