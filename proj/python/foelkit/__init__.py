"""Total-spin sector spectra and ordering checks for ferromagnetic spin chains."""

from foelkit._core import (
    ArcDiagram,
    DimensionTooLargeError,
    HalfInteger,
    NotAdmissibleError,
    SpinChain,
    admissible_spins,
    biquadratic_sweep,
    eigenvalues_below,
    energy_table,
    enumerate_hw_basis,
    foel_check,
    max_total_spin,
    min_energy_sector,
    multiplicity,
    sector_hamiltonian,
    spectral_gap,
    version,
)

__version__ = version()

__all__ = [
    "ArcDiagram",
    "DimensionTooLargeError",
    "HalfInteger",
    "NotAdmissibleError",
    "SpinChain",
    "admissible_spins",
    "biquadratic_sweep",
    "eigenvalues_below",
    "energy_table",
    "enumerate_hw_basis",
    "foel_check",
    "max_total_spin",
    "min_energy_sector",
    "multiplicity",
    "sector_hamiltonian",
    "spectral_gap",
]
