"""Lattice adjacency and its Gray-code and binary-code operator sums.

The encoded Laplacians here are the neighbour-sum (adjacency) part only.  The
``-2`` on the diagonal of the finite-difference stencil is a scalar shift and
only contributes a global phase to ``exp(i lambda L)``; it is restored in
:func:`kinetic_operator`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .encoding import BitOrder, CodeKind, bit_qubit, check_n, default_convention, position_permutation
from .numerics import P0, P1, PAULI, SX, InvalidInput, PhysicalUnits, embed, kron_all


@dataclass(frozen=True)
class LatticeSpec:
    """One-dimensional periodic lattice of ``2**n`` sites."""

    n: int
    units: PhysicalUnits

    def __post_init__(self):
        check_n(self.n)

    @property
    def size(self) -> int:
        return 2**self.n

    @property
    def hopping(self) -> float:
        return self.units.hopping


@dataclass(frozen=True)
class GrayTerm:
    n: int
    k: int
    operator: np.ndarray


@dataclass(frozen=True)
class PauliString:
    """``coefficient * factors[0] (x) ...`` with ``factors[q]`` acting on qubit ``q``."""

    coefficient: float
    factors: str

    @property
    def weight(self) -> int:
        return sum(f != "I" for f in self.factors)

    @property
    def support(self) -> list[int]:
        return [q for q, f in enumerate(self.factors) if f != "I"]

    def matrix(self) -> np.ndarray:
        return self.coefficient * kron_all([PAULI[f] for f in reversed(self.factors)])

    def __str__(self) -> str:
        body = " ".join(f"{f}{q}" for q, f in enumerate(self.factors) if f != "I") or "I"
        return f"{self.coefficient:+g} {body}"


def adjacency_exact(n: int) -> np.ndarray:
    """Periodic nearest-neighbour adjacency in position order.

    For ``n=1`` the two neighbours of each site coincide and the matrix is
    ``2 sigma^x``, matching the one-qubit Gray term.
    """
    check_n(n)
    N = 2**n
    a = np.zeros((N, N), dtype=complex)
    r = np.arange(N)
    a[r, (r + 1) % N] += 1
    a[(r + 1) % N, r] += 1
    return a


def _x(bit: int, n: int, conv: BitOrder) -> np.ndarray:
    return embed({bit_qubit(bit, n, conv): SX}, n)


def gray_terms(n: int, conv: BitOrder | None = None) -> list[GrayTerm]:
    """``G_0 = 2 X_0`` and ``G_k = (X_k - X_{k-1}) prod_{i<=k-2} P0_i`` for ``k >= 1``."""
    check_n(n)
    conv = conv or default_convention(CodeKind.BRGC)
    terms = [GrayTerm(n, 0, 2 * _x(0, n, conv))]
    for k in range(1, n):
        proj = embed({bit_qubit(i, n, conv): P0 for i in range(k - 1)}, n)
        terms.append(GrayTerm(n, k, (_x(k, n, conv) - _x(k - 1, n, conv)) @ proj))
    return terms


def brgc_laplacian(n: int, conv: BitOrder | None = None) -> tuple[np.ndarray, list[GrayTerm]]:
    terms = gray_terms(n, conv)
    return sum(t.operator for t in terms), terms


def binary_terms(n: int, conv: BitOrder | None = None) -> list[np.ndarray]:
    """``B_1 = 2 X_0`` and ``B_l = (X_{l-1} - 1)(prod X_i P0_i + prod X_i P1_i)``, i < l-1."""
    check_n(n)
    conv = conv or default_convention(CodeKind.BINARY)
    eye = np.eye(2**n, dtype=complex)
    out = [2 * _x(0, n, conv)]
    for l in range(2, n + 1):
        low = range(l - 1)
        up = embed({bit_qubit(i, n, conv): SX @ P0 for i in low}, n)
        down = embed({bit_qubit(i, n, conv): SX @ P1 for i in low}, n)
        out.append((_x(l - 1, n, conv) - eye) @ (up + down))
    return out


def binary_laplacian(n: int, conv: BitOrder | None = None) -> tuple[np.ndarray, list[np.ndarray]]:
    terms = binary_terms(n, conv)
    return sum(terms), terms


def offdiagonal(m: np.ndarray) -> np.ndarray:
    return m - np.diag(np.diag(m))


def encoded_adjacency(n: int, code: CodeKind, conv: BitOrder | None = None) -> np.ndarray:
    """Adjacency permuted into the code's basis ordering (oracle route)."""
    pi = position_permutation(n, code, conv)
    return pi @ adjacency_exact(n) @ pi.T


def pauli_expand_binary(n: int, conv: BitOrder | None = None) -> list[PauliString]:
    """Real Pauli-string expansion of the binary-code Laplacian.

    Uses ``X P0 = (X - iY)/2`` and ``X P1 = (X + iY)/2``: the bracket in
    ``B_l`` keeps only strings with an even number of ``Y`` factors on the
    lower ``l-1`` bits, each with weight ``2**(2-l) * (-1)**(#Y/2)``.
    Like strings from different ``l`` are merged and zeros dropped; the
    order is that of first appearance (``l`` ascending, then ``Y`` subsets
    in lexicographic order).
    """
    check_n(n, lo=2)
    conv = conv or default_convention(CodeKind.BINARY)
    coeffs: dict[str, float] = {}

    def add(bits_to_label: dict[int, str], c: float) -> None:
        labels = ["I"] * n
        for bit, lab in bits_to_label.items():
            labels[bit_qubit(bit, n, conv)] = lab
        key = "".join(labels)
        coeffs[key] = coeffs.get(key, 0.0) + c

    add({0: "X"}, 2.0)
    for l in range(2, n + 1):
        m = l - 1
        for size in range(0, m + 1, 2):
            for ys in itertools.combinations(range(m), size):
                c = 2.0 ** (1 - m) * (-1) ** (size // 2)
                low = {b: ("Y" if b in ys else "X") for b in range(m)}
                add({**low, l - 1: "X"}, c)
                add(low, -c)
    return [PauliString(c, f) for f, c in coeffs.items() if abs(c) > 1e-15]


def pauli_decompose(op: np.ndarray) -> list[PauliString]:
    """Brute-force Pauli decomposition by trace projection (``4**n`` strings)."""
    d = op.shape[0]
    n = d.bit_length() - 1
    out = []
    for labels in itertools.product("IXYZ", repeat=n):
        s = PauliString(1.0, "".join(labels))
        c = np.trace(s.matrix().conj().T @ op) / d
        if abs(c) > 1e-12:
            if abs(c.imag) > 1e-12:
                raise InvalidInput("operator is not Hermitian")
            out.append(PauliString(float(c.real), s.factors))
    return out


def pauli_sum_matrix(strings: list[PauliString], n: int) -> np.ndarray:
    out = np.zeros((2**n, 2**n), dtype=complex)
    for s in strings:
        out += s.matrix()
    return out


def encoded_laplacian(n: int, code: CodeKind, conv: BitOrder | None = None) -> np.ndarray:
    if code is CodeKind.BRGC:
        return brgc_laplacian(n, conv)[0]
    return binary_laplacian(n, conv)[0]


def kinetic_operator(spec: LatticeSpec, code: CodeKind, conv: BitOrder | None = None) -> np.ndarray:
    """``T = -(A - 2) / (2 M a^2)`` in the code's basis, in MeV."""
    a = encoded_laplacian(spec.n, code, conv)
    return -(a - 2 * np.eye(spec.size)) * spec.hopping
