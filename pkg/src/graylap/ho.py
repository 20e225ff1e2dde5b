"""Harmonic-oscillator estimate of the kinetic/potential commutator.

In oscillator units ``X = (a + a^dag)/sqrt(2)`` and ``P = i(a^dag - a)/sqrt(2)``,
``[P^2, X^2] = -4iXP - 2 = 2(a^dag^2 - a^2)``.  The bare element pattern
``sqrt(i(i-1)) delta_{i,j+2} + sqrt(j(j-1)) delta_{i+2,j}`` carries the
magnitudes of half of that operator, which has the same singular values as
the symmetric matrix built from them.

Cutoff convention: :func:`ho_comm_matrix` keeps quanta ``0..Lambda``, while
:func:`ho_comm_max_eig` diagonalises the ``Lambda``-state block ``0..Lambda-1``.
The latter is the truncation that gives 11.08, 176.15 and 1944.34 at
``Lambda = 10, 100, 1000``.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .numerics import InvalidInput, spectral_norm


def _check_cutoff(Lambda: int, lo: int = 2) -> int:
    if isinstance(Lambda, bool) or int(Lambda) != Lambda or Lambda < lo:
        raise InvalidInput(f"cutoff must be an integer >= {lo}, got {Lambda!r}")
    return int(Lambda)


@dataclass(frozen=True)
class HOCutoff:
    """Quanta cutoff together with the oscillator length ``b = (M omega)^(-1/2)``."""

    Lambda: int
    b: float

    def __post_init__(self):
        _check_cutoff(self.Lambda)
        if not self.b > 0:
            raise InvalidInput("oscillator length must be positive")

    @classmethod
    def from_oscillator(cls, Lambda: int, mass: float, omega: float) -> HOCutoff:
        if mass <= 0 or omega <= 0:
            raise InvalidInput("mass and omega must be positive")
        return cls(Lambda, 1.0 / math.sqrt(mass * omega))

    @property
    def momentum_cutoff(self) -> float:
        return math.sqrt(self.Lambda) / self.b


def _pattern(dim: int) -> np.ndarray:
    i = np.arange(2, dim)
    m = np.zeros((dim, dim))
    m[i, i - 2] = np.sqrt(i * (i - 1.0))
    return m + m.T


def ho_comm_matrix(Lambda: int) -> np.ndarray:
    """Real symmetric ``(Lambda+1)``-square matrix of the bare element pattern."""
    return _pattern(_check_cutoff(Lambda) + 1)


def ho_comm_max_eig(Lambda: int) -> float:
    """Largest ``|eigenvalue|`` of the element pattern on quanta ``0..Lambda-1``."""
    Lambda = _check_cutoff(Lambda)
    return float(np.max(np.abs(np.linalg.eigvalsh(_pattern(Lambda)))))


def ladder(dim: int) -> np.ndarray:
    """Truncated annihilation operator on ``dim`` states."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def ho_comm_oracle(Lambda: int, pad: int = 0) -> np.ndarray:
    """``[P^2, X^2]`` from truncated ladder operators, on quanta ``0..Lambda``.

    The product is formed on ``Lambda + 1 + pad`` states and the leading block
    returned.  With ``pad = 0`` the top two states carry truncation artefacts;
    ``pad >= 2`` makes the block exact.
    """
    return _oracle_block(_check_cutoff(Lambda) + 1, pad)


def _oracle_block(dim: int, pad: int) -> np.ndarray:
    if pad < 0:
        raise InvalidInput("pad must be non-negative")
    a = ladder(dim + pad)
    ad = a.conj().T
    x = (a + ad) / math.sqrt(2)
    p = 1j * (ad - a) / math.sqrt(2)
    p2, x2 = p @ p, x @ x
    return (p2 @ x2 - x2 @ p2)[:dim, :dim]


def ho_comm_identity(Lambda: int, pad: int = 4) -> np.ndarray:
    """``-4iXP - 2`` on quanta ``0..Lambda`` by direct multiplication."""
    Lambda = _check_cutoff(Lambda)
    dim = Lambda + 1 + pad
    a = ladder(dim)
    ad = a.conj().T
    x = (a + ad) / math.sqrt(2)
    p = 1j * (ad - a) / math.sqrt(2)
    full = -4j * x @ p - 2 * np.eye(dim)
    return full[: Lambda + 1, : Lambda + 1]


@dataclass(frozen=True)
class CutoffMatch:
    Lambda_est: float
    comm_norm_est: float
    crossover_omega: float


def cutoff_match(M: float, omega: float, a: float) -> CutoffMatch:
    """Cutoff from equal momentum reach, the resulting ``||[T,V]||`` and the crossover frequency.

    All arguments in natural units (``a`` in MeV^-1).
    """
    if M <= 0 or omega <= 0 or a <= 0:
        raise InvalidInput("M, omega and a must be positive")
    ma2 = M * a * a
    return CutoffMatch(1.0 / (omega * ma2), omega / (4 * ma2), 2.0 / ma2)


def finite_difference_error_scale(M: float, a: float) -> float:
    """``1 / (2 (M a^2)^2)``."""
    if M <= 0 or a <= 0:
        raise InvalidInput("M and a must be positive")
    return 1.0 / (2 * (M * a * a) ** 2)


@dataclass(frozen=True)
class HOScanRow:
    Lambda: int
    max_eig: float
    oracle_norm: float


def ho_scan(lambdas) -> list[HOScanRow]:
    """Both norms per cutoff on the same ``Lambda``-state block.

    ``oracle_norm`` is the exact commutator's norm there, twice ``max_eig``.
    """
    cut = [_check_cutoff(L) for L in lambdas]
    if not cut:
        raise InvalidInput("empty cutoff list")
    rows = []
    for L in cut:
        rows.append(HOScanRow(L, ho_comm_max_eig(L), spectral_norm(_oracle_block(L, pad=2))))
    return rows


SCAN_COLUMNS = ["Lambda", "max_eig", "oracle_norm"]


def write_scan_csv(rows, fh, header_lines: list[str] | None = None) -> None:
    for line in header_lines or []:
        fh.write(f"# {line}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SCAN_COLUMNS)
    for r in rows:
        w.writerow([r.Lambda, format(r.max_eig, ".17g"), format(r.oracle_norm, ".17g")])
