"""Statevector simulator and free-fermion circuit compiler for the 1-D XY chain."""

from .circuits import (
    Circuit,
    diagonalization_circuit,
    eigenstate,
    evolved_state,
    run,
    time_evolution_circuit,
)
from .exceptions import ResourceLimitError, UnsupportedGateError
from .observables import (
    EstimateRecord,
    energy_exact,
    estimate_energy_diagonal,
    estimate_energy_grouped,
    estimate_mz_shots,
    magnetization,
)
from .statevector import StateVector, basis_state, zero_state
from .xymodel import ModelParams, eigen_energy, ground_bitstring

__all__ = [
    "Circuit",
    "EstimateRecord",
    "ModelParams",
    "ResourceLimitError",
    "StateVector",
    "UnsupportedGateError",
    "basis_state",
    "diagonalization_circuit",
    "eigen_energy",
    "eigenstate",
    "energy_exact",
    "estimate_energy_diagonal",
    "estimate_energy_grouped",
    "estimate_mz_shots",
    "evolved_state",
    "ground_bitstring",
    "magnetization",
    "run",
    "time_evolution_circuit",
    "zero_state",
]

__version__ = "0.1.0"
