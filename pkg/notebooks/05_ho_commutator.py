"""
Commutator growth in an oscillator basis
========================================
"""
import numpy as np

from graylap.ho import cutoff_match, finite_difference_error_scale, ho_comm_oracle, ho_scan
from graylap.numerics import HBARC

# %% Largest eigenvalue against the quanta cutoff.
for row in ho_scan([10, 30, 100, 300, 1000]):
    print(f"Lambda={row.Lambda:5d}  max_eig={row.max_eig:10.3f}  per quantum {row.max_eig / row.Lambda:.4f}"
          f"  full commutator {row.oracle_norm:10.3f}")

# %% Plain truncation of the ladder operators spoils the top corner.
naive, exact = ho_comm_oracle(10), ho_comm_oracle(10, pad=2)
print("truncation artefact rows:", sorted({int(i) for i in np.nonzero(np.abs(naive - exact) > 1e-12)[0]}))

# %% When does the kinetic/potential commutator win?
M, a = 140.0, 1.0 / HBARC
for omega in (1.0, 10.0, 100.0):
    c = cutoff_match(M, omega, a)
    print(f"omega={omega:6.1f} MeV  Lambda~{c.Lambda_est:.2f}  ||[T,V]||~{c.comm_norm_est:.1f}"
          f"  crossover {c.crossover_omega:.1f}  fd scale {finite_difference_error_scale(M, a):.1f}")
