"""Dense linear algebra helpers shared by every other module.

Operators are plain ``numpy`` complex arrays of shape ``(2**m, 2**m)``.
Qubit ``i`` is bit ``i`` of the computational-basis index, i.e. the
right-most tensor factor is qubit 0::

    n=4:  Z_1 = I (x) I (x) Z (x) I
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

EQ_TOL = 1e-10
HERM_TOL = 1e-12
HBARC = 197.3269804  # MeV fm

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
P0 = np.array([[1, 0], [0, 0]], dtype=complex)
P1 = np.array([[0, 0], [0, 1]], dtype=complex)
PAULI = {"I": I2, "X": SX, "Y": SY, "Z": SZ}


class InvalidInput(ValueError):
    """Raised when an argument violates a documented precondition."""


class CapacityError(InvalidInput):
    """Raised when a request exceeds the dense-simulation size limit."""


@dataclass(frozen=True)
class PhysicalUnits:
    """Mass and lattice spacing; spacing is given in fm and used in MeV^-1."""

    mass: float
    spacing_fm: float

    def __post_init__(self):
        if not (self.mass > 0 and self.spacing_fm > 0):
            raise InvalidInput("mass and spacing must be positive")

    @property
    def hbarc(self) -> float:
        return HBARC

    @property
    def spacing_natural(self) -> float:
        return self.spacing_fm / HBARC

    @property
    def hopping(self) -> float:
        """Energy scale 1/(2 M a^2) in MeV."""
        return 1.0 / (2.0 * self.mass * self.spacing_natural**2)


def fm_to_natural(x_fm: float) -> float:
    return x_fm / HBARC


def is_power_of_two(d: int) -> bool:
    return d >= 1 and d & (d - 1) == 0


def num_qubits(op: np.ndarray) -> int:
    d = op.shape[0]
    if not is_power_of_two(d):
        raise InvalidInput(f"dimension {d} is not a power of two")
    return d.bit_length() - 1


def as_operator(m, *, hermitian: bool = False) -> np.ndarray:
    """Validate a square power-of-two complex matrix and return it as an array."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {m.shape}")
    num_qubits(m)
    if not np.all(np.isfinite(m)):
        raise InvalidInput("operator has non-finite entries")
    if hermitian and not is_hermitian(m):
        raise InvalidInput("operator is not Hermitian")
    return m


def is_hermitian(m: np.ndarray, tol: float = HERM_TOL) -> bool:
    return bool(np.max(np.abs(m - m.conj().T), initial=0.0) <= tol)


def is_unitary(u: np.ndarray, tol: float = EQ_TOL) -> bool:
    eye = np.eye(u.shape[0])
    return bool(np.max(np.abs(u.conj().T @ u - eye), initial=0.0) <= tol)


def kron_all(ops) -> np.ndarray:
    return reduce(np.kron, ops, np.ones((1, 1), dtype=complex))


def embed(ops: dict[int, np.ndarray], n: int) -> np.ndarray:
    """Tensor product with ``ops[q]`` on qubit ``q`` and identity elsewhere."""
    return kron_all([ops.get(q, I2) for q in reversed(range(n))])


def pauli_op(label: str, qubit: int, n: int) -> np.ndarray:
    return embed({qubit: PAULI[label]}, n)


def projector_product(qubits, n: int, value: int = 0) -> np.ndarray:
    """Product of single-qubit projectors onto ``|value>`` over ``qubits``."""
    p = P0 if value == 0 else P1
    return embed({q: p for q in qubits}, n)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def spectral_norm(m) -> float:
    """Largest singular value, from a dense SVD."""
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        raise InvalidInput("empty operator")
    if not np.all(np.isfinite(m)):
        raise InvalidInput("operator has non-finite entries")
    return float(np.linalg.svd(m, compute_uv=False)[0])


def herm_expm(h, scale: complex) -> np.ndarray:
    """``exp(scale * h)`` for Hermitian ``h`` via its eigendecomposition.

    For purely imaginary ``scale`` the result is unitary by construction.
    """
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h):
        raise InvalidInput("herm_expm requires a Hermitian generator")
    if not np.isfinite(scale):
        raise InvalidInput("scale must be finite")
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(scale * w)) @ v.conj().T


def distance_upto_global_phase(u, v) -> float:
    """``min_phi ||u - e^{i phi} v||`` over a global phase.

    Starts from the analytic Frobenius minimiser ``phi = arg tr(v^dag u)``
    and refines on a bounded scalar search, since the spectral-norm optimum
    can sit slightly away from it.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise InvalidInput(f"dimension mismatch {u.shape} vs {v.shape}")
    if not (is_unitary(u, 1e-8) and is_unitary(v, 1e-8)):
        raise InvalidInput("both operands must be unitary")

    def dist(phi: float) -> float:
        return spectral_norm(u - np.exp(1j * phi) * v)

    tr = np.trace(v.conj().T @ u)
    phi0 = float(np.angle(tr)) if abs(tr) > 1e-14 else 0.0
    best = dist(phi0)
    if best < 1e-13:
        return best
    # coarse scan, then golden-section refinement around the best point
    grid = phi0 + np.linspace(-np.pi, np.pi, 65)
    vals = [dist(p) for p in grid]
    k = int(np.argmin(vals))
    if vals[k] < best:
        best, phi0 = vals[k], grid[k]
    from scipy.optimize import minimize_scalar

    step = 2 * np.pi / 64
    res = minimize_scalar(dist, bounds=(phi0 - step, phi0 + step), method="bounded",
                          options={"xatol": 1e-12})
    return float(min(best, res.fun))


def normalize(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    nrm = np.linalg.norm(psi)
    if nrm == 0:
        raise InvalidInput("zero state")
    return psi / nrm


def basis_state(index: int, n_qubits: int) -> np.ndarray:
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


def plus_state(n_qubits: int) -> np.ndarray:
    """The product state ``|+>^n``, i.e. the uniform superposition."""
    return np.full(2**n_qubits, 2 ** (-n_qubits / 2), dtype=complex)


def expectation(op: np.ndarray, psi: np.ndarray) -> complex:
    return complex(np.vdot(psi, op @ psi))
