"""
Circuits for one kinetic step
=============================

Build the ancilla-ladder Gray circuit, the multi-controlled reference, the
binary Pauli-string circuit and the QFT kinetic step, and compare sizes.
"""
import numpy as np

from graylap.builders import (
    BuilderConfig,
    Dispersion,
    build_binary_step,
    build_brgc_multicontrol_reference,
    build_brgc_step,
    build_brgc_step_mirrored,
    build_qft_kinetic_step,
)
from graylap.circuit import cancel_adjacent_inverses, circuit_unitary, decompose_ccx_to_two_qubit, metrics, system_unitary, to_qasm3
from graylap.encoding import CodeKind
from graylap.laplacian import LatticeSpec, kinetic_operator
from graylap.numerics import PhysicalUnits, distance_upto_global_phase, herm_expm
from graylap.trotter import u1_brgc

lam = 0.1

# %% Gate counts grow linearly for the Gray circuit.
for n in range(2, 9):
    c = build_brgc_step(BuilderConfig(n, lam))
    u, leak = system_unitary(c)
    print(n, metrics(c).as_dict()["counts"], "depth", metrics(c).depth,
          "error", f"{distance_upto_global_phase(u, u1_brgc(n, lam)):.1e}", "leak", leak)

# %% With multi-controlled rotations there is no ancilla at all.
print(metrics(build_brgc_multicontrol_reference(BuilderConfig(5, lam))).as_dict())

# %% Two steps in alternating order share their Toffoli ladders.
cfg = BuilderConfig(5, lam)
two = build_brgc_step(cfg) + build_brgc_step_mirrored(cfg)
print("CCX before/after cancellation:", two.count("CCX"), cancel_adjacent_inverses(two).count("CCX"))

# %% Toffolis as two-qubit gates.
print(metrics(decompose_ccx_to_two_qubit(build_brgc_step(cfg))).as_dict())

# %% The binary code needs a parity ladder per Pauli string.
for n in range(2, 6):
    print(n, len(build_binary_step(n, lam, simplify=False)), len(build_binary_step(n, lam)))

# %% The QFT step with the lattice dispersion is exact.
spec = LatticeSpec(3, PhysicalUnits(140.0, 5.0))
q = build_qft_kinetic_step(spec, 0.01, Dispersion.COSINE)
print(np.abs(circuit_unitary(q) - herm_expm(kinetic_operator(spec, CodeKind.BINARY), -0.01j)).max())

# %% Export.
print(to_qasm3(build_brgc_step(BuilderConfig(3, lam))))
