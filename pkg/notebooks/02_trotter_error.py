"""
First-order Trotter error of the Gray-code step
===============================================

The product of the n Gray exponentials differs from the exact propagator
by lambda^2, whatever the qubit count.
"""
import numpy as np

from graylap.encoding import CodeKind
from graylap.trotter import (
    default_lambdas,
    loglog_slope,
    total_commutator_norm,
    triangle_commutator_bound,
    trotter_error_sweep,
)

lams = default_lambdas()

# %% Sweep both codes.
for code in CodeKind:
    reps = trotter_error_sweep(code, range(3, 8), lams)
    for n in range(3, 8):
        errs = [r.error for r in reps if r.n == n]
        print(f"{code.value:6s} n={n}  error/lambda^2 at 1e-3: {errs[0] / lams[0]**2:.6f}"
              f"  slope {loglog_slope(lams, errs):.4f}")

# %% The summed commutator has norm 2; the triangle inequality would give 2(n-2).
for n in range(3, 9):
    print(n, round(total_commutator_norm(n), 12), round(triangle_commutator_bound(n), 12))
