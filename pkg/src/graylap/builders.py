"""Circuit builders for one Trotter step of the encoded kinetic term.

Layout for the Gray-code step: system qubits ``0..n-1``, ancillas
``n..2n-4``.  Ancilla ``2n-4`` holds ``P0_0 P0_1`` and ancilla ``2n-3-i``
holds ``prod_{m<=i} P0_m``; ancilla ``n`` therefore carries the full
projector product of the top term ``G_{n-1}``.

Resolved control polarities (checked against :func:`graylap.trotter.u1_brgc`):
system-qubit controls fire on ``|0>``, ancilla controls fire on ``|1>``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .circuit import (
    Circuit,
    Gate,
    cancel_adjacent_inverses,
    ccx,
    cphase,
    crotx,
    diagphase,
    hadamard,
    mcrotx,
    rotx,
    swap,
)
from .encoding import BitOrder, CodeKind, check_n, default_convention
from .laplacian import LatticeSpec, PauliString, pauli_expand_binary
from .numerics import CapacityError, InvalidInput

POLARITY_MAP = {
    "system control": 0,
    "ancilla control": 1,
    "ccx(system, system)": (0, 0),
    "ccx(system, ancilla)": (0, 1),
    "crotx(ancilla)": 1,
    "crotx(system)": 0,
}


class Dispersion(enum.Enum):
    QUADRATIC = "quadratic"
    COSINE = "cosine"


@dataclass(frozen=True)
class BuilderConfig:
    n: int
    lam: float
    dispersion: Dispersion = Dispersion.QUADRATIC

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput("builders need n >= 2")
        if self.n > 10:
            raise CapacityError("builders are limited to n <= 10")

    @property
    def ancillas(self) -> int:
        return max(self.n - 3, 0)

    @property
    def width(self) -> int:
        return self.n + self.ancillas

    @property
    def polarity_convention(self) -> dict:
        return dict(POLARITY_MAP)


def ladder_gates(n: int, lam: float, *, literal: bool = False) -> list[Gate]:
    """The ancilla-ladder Gray-code step as a matrix product, leftmost factor first.

    ``literal=True`` reads the ladder's control labels as bit values and uses
    its ``n_tot - n_c + 1 - c`` control index for the first rotation of each
    loop pass; the default uses the resolved polarities and index ``n + c``.
    Both coincide for ``n <= 4``.
    """
    if n == 2:
        return [rotx(lam, 0), rotx(lam, 1)]
    tail = [crotx(lam, 0, 0, 2), crotx(-lam, 0, 0, 1), rotx(lam, 0), rotx(lam, 1)]
    if n == 3:
        return tail
    n_tot, n_c = 2 * n - 3, n - 2
    sys_pol, anc_pol = 0, 1
    g = [ccx(0, sys_pol, 1, sys_pol, n_tot - 1)]
    for i in range(2, n_c):
        p_i, p_a = (1, 0) if literal else (sys_pol, anc_pol)
        g.append(ccx(i, p_i, n_tot - i + 1, p_a, n_tot - i))
    for c in range(n - 3):
        first_ctrl = n_tot - n_c + 1 - c if literal else n_tot - n_c + 1 + c
        g.append(crotx(lam, first_ctrl, anc_pol, n - 1 - c))
        g.append(crotx(-lam, n_tot - n_c + 1 + c, anc_pol, n - 2 - c))
        other = (n_tot - n_c + 2 + c) % n_tot
        if other > n - 1:
            g.append(ccx(n_c - 1 - c, sys_pol, other, anc_pol, n_tot - n_c + 1 + c))
        else:
            g.append(ccx(n_c - 1 - c, sys_pol, other, sys_pol, n_tot - n_c + 1 + c))
    return g + tail


def _brgc_circuit(n: int, gates: list[Gate], meta: dict) -> Circuit:
    width = n + max(n - 3, 0)
    return Circuit(width, n, tuple(gates), meta)


def build_brgc_step(cfg: BuilderConfig, *, literal: bool = False) -> Circuit:
    """One step ``prod_k exp(i lambda G_k)`` with ``G_0`` acting first.

    :func:`ladder_gates` lists the factors as a matrix product, so their time
    order is reversed here.  The two final single-qubit rotations commute and keep
    their listed order at the front.
    """
    listed = ladder_gates(cfg.n, cfg.lam, literal=literal)
    gates = listed[-2:] + listed[-3::-1]
    return _brgc_circuit(cfg.n, gates, {"builder": "brgc", "n": cfg.n, "lambda": cfg.lam})


def build_brgc_step_mirrored(cfg: BuilderConfig) -> Circuit:
    """Same step with the factors in the opposite order (``G_{n-1}`` acting first)."""
    gates = ladder_gates(cfg.n, cfg.lam)
    return _brgc_circuit(cfg.n, gates, {"builder": "brgc-mirrored", "n": cfg.n, "lambda": cfg.lam})


def build_brgc_multicontrol_reference(cfg: BuilderConfig) -> Circuit:
    """Gray-code step from multi-controlled rotations, one per ``sigma^x`` factor.

    Term ``G_k`` (``k >= 2``) becomes two X rotations on qubits ``k`` and
    ``k-1`` controlled on qubits ``0..k-2`` being ``|0>``.  ``G_1`` and ``G_0``
    are plain rotations, giving ``2(n-1)+1`` gates in total.  For ``n = 2`` the
    output equals :func:`build_brgc_step`.
    """
    n, lam = cfg.n, cfg.lam
    if n == 2:
        return build_brgc_step(cfg)
    gates = [rotx(2 * lam, 0), rotx(lam, 1), rotx(-lam, 0)]
    for k in range(2, n):
        ctrl = list(range(k - 1))
        pol = [0] * len(ctrl)
        gates.append(mcrotx(lam, ctrl, pol, k))
        gates.append(mcrotx(-lam, ctrl, pol, k - 1))
    return Circuit(n, n, tuple(gates), {"builder": "brgc-multicontrol", "n": n, "lambda": lam})


def multicontrol_units(circuit: Circuit) -> int:
    """Serial depth counting each (multi-)controlled rotation as one unit."""
    return len(circuit.gates)


def _cnot(c: int, t: int) -> list[Gate]:
    return [hadamard(t), cphase(math.pi, c, t), hadamard(t)]


def pauli_string_exponential(s: PauliString, lam: float) -> list[Gate]:
    """Gates for ``exp(i lam c P)`` using basis changes and a parity ladder."""
    theta = lam * s.coefficient
    sup = s.support
    pre: list[Gate] = []
    post: list[Gate] = []
    for q in sup:
        f = s.factors[q]
        if f == "X":
            pre.append(hadamard(q))
            post.append(hadamard(q))
        elif f == "Y":
            # exp(i pi/4 X) Z exp(-i pi/4 X) = Y
            pre.append(rotx(-math.pi / 4, q))
            post.append(rotx(math.pi / 4, q))
    ladder: list[Gate] = []
    for a, b in zip(sup, sup[1:]):
        ladder += _cnot(a, b)
    last = sup[-1]
    core = [hadamard(last), rotx(theta, last), hadamard(last)]
    return pre + ladder + core + ladder[::-1] + post[::-1]


def build_binary_step(n: int, lam: float, conv: BitOrder | None = None, *, simplify: bool = True) -> Circuit:
    """Product of separately exponentiated Pauli strings of the binary-code Laplacian."""
    check_n(n, lo=2, hi=8)
    conv = conv or default_convention(CodeKind.BINARY)
    gates: list[Gate] = []
    for s in pauli_expand_binary(n, conv):
        gates += pauli_string_exponential(s, lam)
    c = Circuit(n, n, tuple(gates), {"builder": "binary", "n": n, "lambda": lam, "bit_order": conv.value})
    return cancel_adjacent_inverses(c) if simplify else c


def build_qft(n: int) -> Circuit:
    """DFT ``F[j,k] = exp(2 pi i j k / 2^n) / 2^(n/2)`` on the basis index."""
    check_n(n)
    gates: list[Gate] = []
    for j in range(n - 1, -1, -1):
        gates.append(hadamard(j))
        for k in range(j - 1, -1, -1):
            gates.append(cphase(math.pi / 2 ** (j - k), k, j))
    for i in range(n // 2):
        gates.append(swap(i, n - 1 - i))
    return Circuit(n, n, tuple(gates), {"builder": "qft", "n": n})


def inverse_qft(n: int) -> Circuit:
    qft = build_qft(n)
    inv = []
    for g in reversed(qft.gates):
        inv.append(g if g.kind != "CPHASE" else cphase(-g.angle, *g.qubits))
    return qft.with_gates(inv)


def qft_gate_count(n: int) -> int:
    return n * (n + 1) // 2 + n // 2


def signed_momentum_index(k: int, N: int) -> int:
    return k if k < N // 2 else k - N


def kinetic_phases(spec: LatticeSpec, dt: float, dispersion: Dispersion) -> np.ndarray:
    """Per-momentum phases ``-dt * E(k)`` in Fourier-register order."""
    N = spec.size
    k = np.arange(N)
    if dispersion is Dispersion.COSINE:
        energy = (2 - 2 * np.cos(2 * np.pi * k / N)) * spec.hopping
    elif dispersion is Dispersion.QUADRATIC:
        ks = np.array([signed_momentum_index(int(x), N) for x in k])
        p = 2 * np.pi * ks / (N * spec.units.spacing_natural)
        energy = p**2 / (2 * spec.units.mass)
    else:
        raise InvalidInput(f"unknown dispersion {dispersion!r}")
    return -dt * energy


def _bit_reversal(n: int) -> list[Gate]:
    return [swap(i, n - 1 - i) for i in range(n // 2)]


def build_qft_kinetic_step(
    spec: LatticeSpec, dt: float, dispersion: Dispersion = Dispersion.QUADRATIC, conv: BitOrder | None = None
) -> Circuit:
    """QFT, diagonal kinetic phases, inverse QFT on a binary position register.

    With the cosine dispersion this is exactly ``exp(-i dt T)`` for the
    finite-difference kinetic operator.  For the ``HIGH`` bit order the block is
    conjugated by a bit reversal so it acts on the same basis as the binary code.
    """
    if not isinstance(dispersion, Dispersion):
        raise InvalidInput(f"unknown dispersion {dispersion!r}")
    n = spec.n
    conv = conv or default_convention(CodeKind.BINARY)
    phases = kinetic_phases(spec, dt, dispersion)
    rev = _bit_reversal(n) if conv is BitOrder.HIGH else []
    gates = rev + list(build_qft(n).gates) + [diagphase(phases, range(n))] + list(inverse_qft(n).gates) + rev
    meta = {"builder": "qft-kinetic", "n": n, "dt": dt, "dispersion": dispersion.value, "bit_order": conv.value}
    return Circuit(n, n, tuple(gates), meta)
