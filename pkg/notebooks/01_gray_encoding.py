"""
Lattice positions in Gray and binary code
=========================================

Walk round a 3-qubit periodic lattice and look at which qubits change
between neighbours, then compare the two encoded adjacency operators.
"""
import numpy as np

from graylap.encoding import CodeKind, basis_index, bin_to_gray, conventions_record
from graylap.laplacian import brgc_laplacian, binary_laplacian, gray_terms, pauli_expand_binary

n = 3

# %% Neighbouring sites differ in one Gray bit, but in up to n binary bits.
for r in range(2**n):
    nxt = (r + 1) % 2**n
    print(f"r={r}  gray {bin_to_gray(r):03b} -> {bin_to_gray(nxt):03b}   binary {r:03b} -> {nxt:03b}")

# %% Which qubit carries which bit is fixed once, per code.
print("bit order:", conventions_record())
print("basis index of each site, Gray:", [basis_index(r, n, CodeKind.BRGC) for r in range(2**n)])

# %% The Gray operator is a sum of n terms, each at most a controlled two-qubit flip.
for t in gray_terms(n):
    print(f"G_{t.k}: {np.count_nonzero(t.operator)} nonzero entries")

# %% The binary operator needs many more Pauli strings.
for m in range(2, 7):
    strings = pauli_expand_binary(m)
    heavy = sum(s.weight == m for s in strings)
    print(f"n={m}: {len(strings)} strings, {heavy} of full weight")

# %% Both operators have the circulant spectrum 2 cos(2 pi k / N).
print(np.round(np.linalg.eigvalsh(brgc_laplacian(n)[0]), 6))
print(np.round(np.linalg.eigvalsh(binary_laplacian(n)[0]), 6))
