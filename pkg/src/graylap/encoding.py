"""Binary and Gray (BRGC) position codes and their basis permutations.

A position ``r`` on the ``2**n`` lattice is stored as an ``n``-bit codeword
(``r`` itself for the binary code, ``gray(r)`` for BRGC).  The bit-order
convention decides which qubit holds which codeword bit:

* ``LOW``:  codeword bit ``b`` lives on qubit ``b`` (qubit 0 is the LSB);
* ``HIGH``: codeword bit ``b`` lives on qubit ``n-1-b`` (qubit 0 is the MSB).

The defaults per code are fixed by :func:`calibrate_convention`, which tests
both conventions against reference two- and three-qubit operator forms.
"""
from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .numerics import InvalidInput, SX, SY, embed

MAX_QUBITS = 10


class CodeKind(enum.Enum):
    BINARY = "binary"
    BRGC = "brgc"


class BitOrder(enum.Enum):
    LOW = "low"
    HIGH = "high"


def bin_to_gray(b: int) -> int:
    if b < 0:
        raise InvalidInput("negative index")
    return b ^ (b >> 1)


def gray_to_bin(g: int) -> int:
    if g < 0:
        raise InvalidInput("negative codeword")
    b = g
    shift = 1
    while g >> shift:
        b ^= g >> shift
        shift += 1
    return b


def gray_list(n: int) -> list[int]:
    """Reflect-and-prefix construction of the n-bit BRGC, independent of ``bin_to_gray``."""
    codes = [0]
    for bit in range(n):
        codes = codes + [c | (1 << bit) for c in reversed(codes)]
    return codes


def reverse_bits(x: int, n: int) -> int:
    out = 0
    for _ in range(n):
        out = (out << 1) | (x & 1)
        x >>= 1
    return out


def bit_qubit(bit: int, n: int, conv: BitOrder) -> int:
    """Qubit that stores codeword bit ``bit``."""
    return bit if conv is BitOrder.LOW else n - 1 - bit


def check_n(n: int, lo: int = 1, hi: int = MAX_QUBITS) -> None:
    if not (isinstance(n, (int, np.integer)) and lo <= n <= hi):
        raise InvalidInput(f"qubit count must lie in [{lo}, {hi}], got {n!r}")


def codeword(r: int, code: CodeKind) -> int:
    return bin_to_gray(r) if code is CodeKind.BRGC else r


def basis_index(r: int, n: int, code: CodeKind, conv: BitOrder | None = None) -> int:
    """Computational-basis index holding lattice position ``r``."""
    conv = conv or default_convention(code)
    w = codeword(r, code)
    return w if conv is BitOrder.LOW else reverse_bits(w, n)


def position_map(n: int, code: CodeKind, conv: BitOrder | None = None) -> np.ndarray:
    """``idx[r]`` is the basis index of position ``r``."""
    return np.array([basis_index(r, n, code, conv) for r in range(2**n)])


def position_permutation(n: int, code: CodeKind, conv: BitOrder | None = None) -> np.ndarray:
    """Permutation matrix ``Pi`` with ``Pi[basis_index(r), r] = 1``.

    Operators in position order map to the encoded basis as ``Pi @ A @ Pi.T``.
    """
    check_n(n)
    idx = position_map(n, code, conv)
    pi = np.zeros((2**n, 2**n))
    pi[idx, np.arange(2**n)] = 1.0
    return pi


def _cycle_adjacency(n: int) -> np.ndarray:
    # kept local so calibration does not depend on the laplacian module
    N = 2**n
    a = np.zeros((N, N))
    for r in range(N):
        a[r, (r + 1) % N] += 1
        a[(r + 1) % N, r] += 1
    return a


def _reference_laplacians(code: CodeKind) -> dict[int, np.ndarray]:
    x = lambda q, n: embed({q: SX}, n)  # noqa: E731
    if code is CodeKind.BRGC:
        # transverse field form at n=2; the k=2 Gray term fixes the order at n=3
        p0 = np.diag([1.0, 0.0]).astype(complex)
        g2 = (x(2, 3) - x(1, 3)) @ embed({0: p0}, 3)
        return {
            2: x(1, 2) + x(0, 2),
            3: 2 * x(0, 3) + (x(1, 3) - x(0, 3)) + g2,
        }
    xx = embed({0: SX, 1: SX}, 2)
    l2 = x(1, 2) + xx
    x2, yy12 = x(2, 3), embed({1: SY, 2: SY}, 3)
    l2_x2 = embed({1: SX, 2: SX}, 3) + embed({0: SX, 1: SX, 2: SX}, 3)
    l3 = x2 + 0.5 * l2_x2 + 0.5 * yy12 - 0.5 * embed({0: SX, 1: SY, 2: SY}, 3)
    return {2: l2, 3: l3}


@lru_cache(maxsize=None)
def calibrate_convention(code: CodeKind) -> BitOrder:
    """Pick the bit order under which the reference small-n operator forms hold exactly."""
    reference = _reference_laplacians(code)
    hits = []
    for conv in BitOrder:
        ok = True
        for n, op in reference.items():
            idx = [basis_index(r, n, code, conv) for r in range(2**n)]
            pi = np.zeros((2**n, 2**n))
            pi[idx, np.arange(2**n)] = 1.0
            if not np.allclose(pi @ _cycle_adjacency(n) @ pi.T, op, atol=1e-12):
                ok = False
        if ok:
            hits.append(conv)
    if not hits:
        raise RuntimeError(f"no bit order reproduces the reference {code.value} operator")
    return hits[0]


def default_convention(code: CodeKind) -> BitOrder:
    return calibrate_convention(code)


def conventions_record() -> dict[str, str]:
    return {code.value: default_convention(code).value for code in CodeKind}
