"""First-order Trotter products of the encoded Laplacians and their error.

``u1_brgc`` multiplies ``exp(i lambda G_k)`` with ``k = 0`` acting first:
``U = e^{i lambda G_{n-1}} ... e^{i lambda G_0}``.  The leading error term is
``(lambda^2 / 2) sum_{j>k} [G_j, G_k]`` whose norm is 2 for every ``n``, so the
spectral-norm error is ``lambda^2 + O(lambda^3)``.
"""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache

import numpy as np

from .encoding import CodeKind, check_n
from .laplacian import encoded_laplacian, gray_terms, pauli_expand_binary
from .numerics import (
    PAULI,
    InvalidInput,
    commutator,
    embed,
    herm_expm,
    projector_product,
    spectral_norm,
)


@dataclass(frozen=True)
class TrotterReport:
    n: int
    lam: float
    code: str
    error: float
    bound_loose: float
    bound_tight: float


@dataclass(frozen=True)
class CostEstimate:
    steps: int
    total_gates: int


@lru_cache(maxsize=16)
def _gray_ops(n: int) -> tuple[np.ndarray, ...]:
    return tuple(t.operator for t in gray_terms(n))


def u1_brgc(n: int, lam: float) -> np.ndarray:
    check_n(n, lo=2)
    u = np.eye(2**n, dtype=complex)
    for g in _gray_ops(n):
        u = herm_expm(g, 1j * lam) @ u
    return u


def _pauli_exp(s, lam: float, n: int) -> np.ndarray:
    # exp(i t P) = cos t + i sin t P for a Pauli string P
    p = embed({q: PAULI[f] for q, f in enumerate(s.factors) if f != "I"}, n)
    t = lam * s.coefficient
    return math.cos(t) * np.eye(2**n) + 1j * math.sin(t) * p


def u1_binary(n: int, lam: float) -> np.ndarray:
    """Product of the separately exponentiated Pauli strings, first string acting first."""
    check_n(n, lo=2)
    u = np.eye(2**n, dtype=complex)
    for s in pauli_expand_binary(n):
        u = _pauli_exp(s, lam, n) @ u
    return u


def u1(n: int, lam: float, code: CodeKind) -> np.ndarray:
    return u1_brgc(n, lam) if code is CodeKind.BRGC else u1_binary(n, lam)


def exact_propagator(n: int, lam: float, code: CodeKind = CodeKind.BRGC) -> np.ndarray:
    return herm_expm(encoded_laplacian(n, code), 1j * lam)


def trotter_error(n: int, lam: float, code: CodeKind = CodeKind.BRGC) -> float:
    return spectral_norm(u1(n, lam, code) - exact_propagator(n, lam, code))


def _check_j(n: int, j: int) -> None:
    check_n(n, lo=3)
    if not 2 <= j <= n - 1:
        raise InvalidInput(f"j must lie in [2, {n - 1}], got {j}")


def _x(q, n):
    return embed({q: PAULI["X"]}, n)


def _y(q, n):
    return embed({q: PAULI["Y"]}, n)


def commutator_sum(n: int, j: int) -> np.ndarray:
    """``sum_{k<j} [G_j, G_k]`` by direct matrix commutators."""
    _check_j(n, j)
    g = _gray_ops(n)
    return sum(commutator(g[j], g[k]) for k in range(j))


def commutator_sum_closed(n: int, j: int) -> np.ndarray:
    """``i (X_j - X_{j-1}) prod_{i=1}^{j-2} P0_i Y_0``."""
    _check_j(n, j)
    a = _x(j, n) - _x(j - 1, n)
    return 1j * a @ projector_product(range(1, j - 1), n) @ _y(0, n)


def adjacent_commutator_closed(n: int, j: int) -> np.ndarray:
    """``[G_j, G_{j-1}] = -i (X_j - X_{j-1}) prod_{i<=j-3} P0_i Y_{j-2}``."""
    _check_j(n, j)
    a = _x(j, n) - _x(j - 1, n)
    return -1j * a @ projector_product(range(j - 2), n) @ _y(j - 2, n)


def distant_commutator_closed(n: int, j: int, k: int) -> np.ndarray:
    """``[G_j, G_k]`` for ``1 <= k <= j-2``; for ``k=0`` the single term ``2i A prod P0 Y_0``."""
    _check_j(n, j)
    if not 0 <= k <= j - 2:
        raise InvalidInput("k must lie in [0, j-2]")
    a = _x(j, n) - _x(j - 1, n)
    keep = lambda skip: [i for i in range(j - 1) if i != skip]  # noqa: E731
    if k == 0:
        return 2j * a @ projector_product(keep(0), n) @ _y(0, n)
    return 1j * a @ (
        projector_product(keep(k), n) @ _y(k, n) - projector_product(keep(k - 1), n) @ _y(k - 1, n)
    )


def total_commutator(n: int) -> np.ndarray:
    check_n(n, lo=3)
    return sum(commutator_sum(n, j) for j in range(2, n))


def total_commutator_norm(n: int) -> float:
    return spectral_norm(total_commutator(n))


def triangle_commutator_bound(n: int) -> float:
    """``sum_j ||sum_k [G_j, G_k]||``, the triangle-inequality accumulation (``2(n-2)``)."""
    check_n(n, lo=3)
    return sum(spectral_norm(commutator_sum(n, j)) for j in range(2, n))


def trotter_report(n: int, lam: float, code: CodeKind = CodeKind.BRGC) -> TrotterReport:
    return TrotterReport(
        n=n,
        lam=lam,
        code=code.value,
        error=trotter_error(n, lam, code),
        bound_loose=max(n - 2, 0) * lam**2,
        bound_tight=lam**2,
    )


def default_lambdas(points: int = 13, lo: float = 1e-3, hi: float = 1e-1) -> list[float]:
    return list(np.logspace(np.log10(lo), np.log10(hi), points))


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("GRAYLAP_THREADS", "1")))
    except ValueError:
        return 1


def trotter_error_sweep(code: CodeKind, n_range, lambda_range, threads: int | None = None) -> list[TrotterReport]:
    """One report per ``(n, lambda)``, ordered by ``n`` then ``lambda``."""
    ns = sorted(set(int(n) for n in n_range))
    lams = sorted(set(float(x) for x in lambda_range))
    if not ns or not lams:
        raise InvalidInput("empty sweep range")
    if ns[0] < 2 or ns[-1] > 10:
        raise InvalidInput("n must lie in [2, 10]")
    if lams[0] <= 0 or lams[-1] > 0.5:
        raise InvalidInput("lambda must lie in (0, 0.5]")
    grid = [(n, lam) for n in ns for lam in lams]
    threads = threads or thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda p: trotter_report(p[0], p[1], code), grid))
    else:
        reports = [trotter_report(n, lam, code) for n, lam in grid]
    return sorted(reports, key=lambda r: (r.n, r.lam))


def loglog_slope(lams, errors) -> float:
    slope, _ = np.polyfit(np.log(lams), np.log(errors), 1)
    return float(slope)


SWEEP_COLUMNS = ["n", "lambda", "code", "error", "bound_loose", "bound_tight"]


def fmt(x: float) -> str:
    return format(x, ".17g")


def write_sweep_csv(reports, fh, header_lines: list[str] | None = None) -> None:
    for line in header_lines or []:
        fh.write(f"# {line}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for r in reports:
        w.writerow([r.n, fmt(r.lam), r.code, fmt(r.error), fmt(r.bound_loose), fmt(r.bound_tight)])


def report_dict(r: TrotterReport) -> dict:
    return asdict(r)


def cost_estimate(T_total: float, A: int, D: int, eps: float, gates_per_step: int) -> CostEstimate:
    """Trotter steps ``ceil(T^2 A D / eps)`` and the resulting gate total."""
    if eps <= 0:
        raise InvalidInput("eps must be positive")
    if T_total <= 0 or A <= 0 or D <= 0 or gates_per_step <= 0:
        raise InvalidInput("all cost parameters must be positive")
    raw = T_total**2 * A * D / eps
    steps = max(1, math.ceil(raw * (1 - 1e-12)))
    return CostEstimate(steps, steps * gates_per_step)
