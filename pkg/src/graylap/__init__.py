"""Gray-code and binary encodings of the lattice Laplacian for quantum simulation."""
from __future__ import annotations

__version__ = "0.1.0"

from .encoding import BitOrder, CodeKind, conventions_record, default_convention
from .laplacian import LatticeSpec, PauliString, brgc_laplacian, binary_laplacian, kinetic_operator
from .numerics import CapacityError, InvalidInput, PhysicalUnits, spectral_norm
from .trotter import trotter_error, trotter_error_sweep, u1_binary, u1_brgc
from .circuit import Circuit, Gate, apply, metrics, system_unitary
from .builders import BuilderConfig, build_binary_step, build_brgc_step, build_qft, build_qft_kinetic_step
from .adiabatic import Evolver, Potential, Ramp, Schedule, evolve
from .ho import cutoff_match, ho_comm_matrix, ho_comm_max_eig, ho_comm_oracle

__all__ = [
    "BitOrder", "CodeKind", "conventions_record", "default_convention",
    "LatticeSpec", "PauliString", "brgc_laplacian", "binary_laplacian", "kinetic_operator",
    "CapacityError", "InvalidInput", "PhysicalUnits", "spectral_norm",
    "trotter_error", "trotter_error_sweep", "u1_binary", "u1_brgc",
    "Circuit", "Gate", "apply", "metrics", "system_unitary",
    "BuilderConfig", "build_binary_step", "build_brgc_step", "build_qft", "build_qft_kinetic_step",
    "Evolver", "Potential", "Ramp", "Schedule", "evolve",
    "cutoff_match", "ho_comm_matrix", "ho_comm_max_eig", "ho_comm_oracle",
]
