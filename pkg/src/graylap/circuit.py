"""Gate vocabulary, statevector simulation and simple circuit passes.

Rotation convention: ``ROTX(theta) = exp(i theta X)``, so a term
``exp(i lambda G_k)`` maps to gates whose angle is literally ``lambda``.
In the usual convention this is ``RX(-2 theta)``.

Controls carry a polarity: the gate fires when the control qubit's
computational value equals the polarity.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass, field, replace

import numpy as np

from .numerics import CapacityError, InvalidInput

ROTX = "ROTX"
H = "H"
CROTX = "CROTX"
CCX = "CCX"
CPHASE = "CPHASE"
SWAP = "SWAP"
DIAGPHASE = "DIAGPHASE"
MCROTX = "MCROTX"
KINDS = (ROTX, H, CROTX, CCX, CPHASE, SWAP, DIAGPHASE, MCROTX)
MAX_UNITARY_WIDTH = 10
MAX_STATE_WIDTH = 24


@dataclass(frozen=True)
class Gate:
    """A gate instance.  For controlled kinds ``qubits`` lists controls first, target last."""

    kind: str
    qubits: tuple[int, ...]
    angle: float = 0.0
    polarities: tuple[int, ...] = ()
    phases: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInput(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits) or min(self.qubits, default=0) < 0:
            raise InvalidInput(f"invalid qubit operands {self.qubits}")
        if any(p not in (0, 1) for p in self.polarities):
            raise InvalidInput("polarities must be 0 or 1")
        if self.kind == DIAGPHASE and len(self.phases) != 2 ** len(self.qubits):
            raise InvalidInput("DIAGPHASE needs one phase per basis state of its qubits")

    @property
    def controls(self) -> tuple[int, ...]:
        return self.qubits[: len(self.polarities)]

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def __str__(self) -> str:
        ctl = "".join(f"{'' if p else '!'}{c}," for c, p in zip(self.controls, self.polarities))
        rest = self.qubits[len(self.polarities):]
        arg = f"({self.angle:.6g})" if self.kind in (ROTX, CROTX, CPHASE, MCROTX) else ""
        return f"{self.kind}{arg}[{ctl}{','.join(map(str, rest))}]"


def rotx(theta: float, target: int) -> Gate:
    return Gate(ROTX, (target,), float(theta))


def hadamard(target: int) -> Gate:
    return Gate(H, (target,))


def crotx(theta: float, control: int, polarity: int, target: int) -> Gate:
    return Gate(CROTX, (control, target), float(theta), (polarity,))


def ccx(c1: int, p1: int, c2: int, p2: int, target: int) -> Gate:
    return Gate(CCX, (c1, c2, target), 0.0, (p1, p2))


def cphase(theta: float, control: int, target: int) -> Gate:
    return Gate(CPHASE, (control, target), float(theta))


def swap(q1: int, q2: int) -> Gate:
    return Gate(SWAP, (q1, q2))


def diagphase(phases, qubits) -> Gate:
    """``exp(i phases[k])`` on local basis state ``k``; ``qubits[i]`` is bit ``i`` of ``k``."""
    return Gate(DIAGPHASE, tuple(qubits), 0.0, (), tuple(float(p) for p in phases))


def mcrotx(theta: float, controls, polarities, target: int) -> Gate:
    return Gate(MCROTX, (*controls, target), float(theta), tuple(polarities))


@dataclass(frozen=True)
class Circuit:
    width: int
    system_qubits: int
    gates: tuple[Gate, ...] = ()
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.width < self.system_qubits or self.system_qubits < 0:
            raise InvalidInput("width must be at least the number of system qubits")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.width:
                raise InvalidInput(f"gate {g} exceeds circuit width {self.width}")

    def __add__(self, other: Circuit) -> Circuit:
        if (self.width, self.system_qubits) != (other.width, other.system_qubits):
            raise InvalidInput("cannot concatenate circuits of different shape")
        return Circuit(self.width, self.system_qubits, self.gates + other.gates, dict(self.meta))

    def __len__(self) -> int:
        return len(self.gates)

    def with_gates(self, gates) -> Circuit:
        return replace(self, gates=tuple(gates))

    def count(self, kind: str) -> int:
        return sum(g.kind == kind for g in self.gates)


# -- simulation ---------------------------------------------------------------

def _rotx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 1j * s], [1j * s, c]])


_H = np.array([[1, 1], [1, -1]]) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _axis(q: int, n: int) -> int:
    # C-order reshape puts the most significant bit (qubit n-1) on axis 0
    return n - 1 - q


def _apply_1q(t: np.ndarray, m: np.ndarray, q: int, n: int, sel: tuple) -> None:
    """Apply ``m`` to qubit ``q`` in place, restricted to index selection ``sel``."""
    ax = _axis(q, n)
    i0 = list(sel)
    i1 = list(sel)
    i0[ax], i1[ax] = 0, 1
    i0, i1 = tuple(i0), tuple(i1)
    a0, a1 = t[i0].copy(), t[i1]
    t[i0] = m[0, 0] * a0 + m[0, 1] * a1
    t[i1] = m[1, 0] * a0 + m[1, 1] * a1


def _control_sel(g: Gate, n: int, ndim: int) -> list:
    sel = [slice(None)] * ndim
    for c, p in zip(g.controls, g.polarities):
        sel[_axis(c, n)] = p
    return sel


def _apply_gate(t: np.ndarray, g: Gate, n: int) -> np.ndarray:
    ndim = t.ndim
    full = [slice(None)] * ndim
    k = g.kind
    if k == ROTX:
        _apply_1q(t, _rotx_matrix(g.angle), g.target, n, tuple(full))
    elif k == H:
        _apply_1q(t, _H, g.target, n, tuple(full))
    elif k in (CROTX, MCROTX):
        _apply_1q(t, _rotx_matrix(g.angle), g.target, n, tuple(_control_sel(g, n, ndim)))
    elif k == CCX:
        _apply_1q(t, _X, g.target, n, tuple(_control_sel(g, n, ndim)))
    elif k == CPHASE:
        sel = list(full)
        sel[_axis(g.qubits[0], n)] = 1
        sel[_axis(g.qubits[1], n)] = 1
        t[tuple(sel)] *= np.exp(1j * g.angle)
    elif k == SWAP:
        t = np.swapaxes(t, _axis(g.qubits[0], n), _axis(g.qubits[1], n)).copy()
    elif k == DIAGPHASE:
        m = len(g.qubits)
        ph = np.exp(1j * np.asarray(g.phases)).reshape([2] * m)
        # local tensor axis i is bit m-1-i, i.e. qubit g.qubits[m-1-i]
        src = [_axis(g.qubits[m - 1 - i], n) for i in range(m)]
        order = np.argsort(src)
        ph = np.transpose(ph, order)
        shape = [1] * ndim
        for ax in src:
            shape[ax] = 2
        t *= ph.reshape(shape)
    return t


def _simulate(circuit: Circuit, amps: np.ndarray) -> np.ndarray:
    n = circuit.width
    batch = amps.shape[1:]
    t = np.array(amps, dtype=complex).reshape([2] * n + list(batch))
    for g in circuit.gates:
        t = _apply_gate(t, g, n)
    return t.reshape((2**n, *batch))


def apply(circuit: Circuit, state) -> np.ndarray:
    """Apply the gates left to right to a statevector and return a new vector."""
    psi = np.asarray(state, dtype=complex)
    if psi.ndim != 1 or psi.size != 2**circuit.width:
        raise InvalidInput(f"state of size {psi.size} does not match width {circuit.width}")
    if circuit.width > MAX_STATE_WIDTH:
        raise CapacityError("circuit too wide for dense simulation")
    return _simulate(circuit, psi[:, None])[:, 0]


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense unitary whose columns are the images of the basis states."""
    if circuit.width > MAX_UNITARY_WIDTH:
        raise CapacityError(f"unitary extraction limited to width {MAX_UNITARY_WIDTH}")
    return _simulate(circuit, np.eye(2**circuit.width, dtype=complex))


def system_unitary(circuit: Circuit) -> tuple[np.ndarray, float]:
    """Block acting on system qubits with ancillas in ``|0>``, and the leaked weight.

    Ancillas occupy the high qubits, so ancilla-zero basis states are the first
    ``2**system_qubits`` indices.  The second value is the largest amplitude
    left outside that block, which is zero when ancillas are restored.
    """
    d = 2**circuit.system_qubits
    cols = np.zeros((2**circuit.width, d), dtype=complex)
    cols[:d, :d] = np.eye(d)
    if circuit.width > MAX_STATE_WIDTH:
        raise CapacityError("circuit too wide for dense simulation")
    out = _simulate(circuit, cols)
    leak = float(np.max(np.abs(out[d:]), initial=0.0))
    return out[:d], leak


# -- metrics ------------------------------------------------------------------

@dataclass(frozen=True)
class CircuitMetrics:
    gate_count: int
    depth: int
    width: int
    counts: dict
    two_qubit: int
    multi_qubit: int

    def as_dict(self) -> dict:
        return {
            "gate_count": self.gate_count,
            "depth": self.depth,
            "width": self.width,
            "counts": dict(sorted(self.counts.items())),
            "two_qubit": self.two_qubit,
            "multi_qubit": self.multi_qubit,
        }


def layers(circuit: Circuit) -> list[list[Gate]]:
    """Greedy as-soon-as-possible layering on disjoint qubit supports."""
    level = [0] * circuit.width
    out: list[list[Gate]] = []
    for g in circuit.gates:
        d = max(level[q] for q in g.qubits)
        for q in g.qubits:
            level[q] = d + 1
        if d == len(out):
            out.append([])
        out[d].append(g)
    return out


def metrics(circuit: Circuit) -> CircuitMetrics:
    return CircuitMetrics(
        gate_count=len(circuit.gates),
        depth=len(layers(circuit)),
        width=circuit.width,
        counts=dict(Counter(g.kind for g in circuit.gates)),
        two_qubit=sum(len(g.qubits) == 2 for g in circuit.gates),
        multi_qubit=sum(len(g.qubits) > 2 for g in circuit.gates),
    )


# -- cancellation -------------------------------------------------------------

_SELF_INVERSE = (CCX, H)
_MERGEABLE = (ROTX, CROTX, CPHASE, MCROTX, DIAGPHASE)


def _operand_key(g: Gate):
    if g.kind in (SWAP, CPHASE):
        return frozenset(g.qubits)
    if g.kind == CCX:
        # the two controls may be listed in either order
        return (frozenset(zip(g.controls, g.polarities)), g.target)
    return (g.qubits, g.polarities)


def _merge(prev: Gate, g: Gate) -> tuple[bool, Gate | None]:
    """Return (handled, replacement) for ``g`` arriving right after ``prev``."""
    if prev.kind != g.kind or _operand_key(prev) != _operand_key(g):
        return False, None
    if g.kind in _SELF_INVERSE or g.kind == SWAP:
        return True, None
    if g.kind == DIAGPHASE:
        if prev.qubits != g.qubits:
            return False, None
        ph = tuple(a + b for a, b in zip(prev.phases, g.phases))
        if max(abs(p) for p in ph) < 1e-12:
            return True, None
        return True, replace(prev, phases=ph)
    if g.kind in _MERGEABLE:
        angle = prev.angle + g.angle
        if abs(angle) < 1e-12:
            return True, None
        return True, replace(prev, angle=angle)
    return False, None


def _is_identity(g: Gate) -> bool:
    if g.kind == DIAGPHASE:
        return max(abs(p) for p in g.phases) < 1e-12
    return g.kind in _MERGEABLE and abs(g.angle) < 1e-12


def _cancel_pass(gates: list[Gate]) -> tuple[list[Gate], bool]:
    out: list[Gate] = []
    changed = False
    for g in gates:
        if _is_identity(g):
            changed = True
            continue
        sup = set(g.qubits)
        handled = False
        for i in range(len(out) - 1, -1, -1):
            prev = out[i]
            if sup.isdisjoint(prev.qubits):
                continue
            ok, rep = _merge(prev, g)
            if ok:
                handled = changed = True
                if rep is None:
                    del out[i]
                else:
                    out[i] = rep
            break
        if not handled:
            out.append(g)
    return out, changed


def cancel_adjacent_inverses(circuit: Circuit) -> Circuit:
    """Remove adjacent self-inverse pairs and merge adjacent same-operand rotations.

    Zero-angle rotations are dropped.  Gates only move past each other when
    their qubit supports are disjoint.  Runs to a fixed point.
    """
    gates = list(circuit.gates)
    changed = True
    while changed:
        gates, changed = _cancel_pass(gates)
    return circuit.with_gates(gates)


# -- Toffoli decomposition -----------------------------------------------------

def _ccx_block(g: Gate) -> list[Gate]:
    (c1, c2), (p1, p2), t = g.controls, g.polarities, g.target
    flips = [c for c, p in ((c1, p1), (c2, p2)) if p == 0]
    # X on a zero-polarity control, as exp(-i pi/2 X) ... exp(i pi/2 X) = X . X
    pre = [rotx(math.pi / 2, c) for c in flips]
    post = [rotx(-math.pi / 2, c) for c in flips]
    core = [
        hadamard(t),
        cphase(math.pi / 2, c2, t),
        crotx(math.pi / 2, c1, 1, c2),
        cphase(-math.pi / 2, c2, t),
        crotx(-math.pi / 2, c1, 1, c2),
        cphase(math.pi / 2, c1, t),
        hadamard(t),
    ]
    return pre + core + post


TWO_QUBIT_GATES_PER_CCX = 5


def decompose_ccx_to_two_qubit(circuit: Circuit) -> Circuit:
    """Replace each CCX by five two-qubit gates plus single-qubit dressing.

    The core is ``H . CCZ . H`` with ``CCZ`` built from three controlled
    phases and two controlled ``X`` rotations whose ``+-i`` phases cancel.
    """
    gates: list[Gate] = []
    for g in circuit.gates:
        gates.extend(_ccx_block(g) if g.kind == CCX else [g])
    return circuit.with_gates(gates)


# -- serialisation ------------------------------------------------------------

def gate_to_dict(g: Gate) -> dict:
    d = {"kind": g.kind, "qubits": list(g.qubits), "polarities": list(g.polarities), "angle": g.angle}
    if g.kind == DIAGPHASE:
        d["phases"] = list(g.phases)
    return d


def gate_from_dict(d: dict) -> Gate:
    return Gate(
        d["kind"],
        tuple(d["qubits"]),
        float(d.get("angle", 0.0)),
        tuple(d.get("polarities", ())),
        tuple(d.get("phases", ())),
    )


def to_json_dict(circuit: Circuit) -> dict:
    return {
        "width": circuit.width,
        "system_qubits": circuit.system_qubits,
        "gates": [gate_to_dict(g) for g in circuit.gates],
    }


def to_json(circuit: Circuit, **kw) -> str:
    return json.dumps(to_json_dict(circuit), **kw)


def from_json(text_or_dict) -> Circuit:
    d = json.loads(text_or_dict) if isinstance(text_or_dict, str) else text_or_dict
    return Circuit(d["width"], d["system_qubits"], tuple(gate_from_dict(g) for g in d["gates"]))


class UnsupportedExport(InvalidInput):
    pass


def _ctrl_prefix(pols) -> str:
    return "".join("ctrl @ " if p else "negctrl @ " for p in pols)


def _qasm_gate(g: Gate) -> list[str]:
    q = [f"q[{i}]" for i in g.qubits]
    a = lambda x: format(x, ".17g")  # noqa: E731
    if g.kind == ROTX:
        return [f"rx({a(-2 * g.angle)}) {q[0]};"]
    if g.kind == H:
        return [f"h {q[0]};"]
    if g.kind in (CROTX, MCROTX):
        return [f"{_ctrl_prefix(g.polarities)}rx({a(-2 * g.angle)}) {', '.join(q)};"]
    if g.kind == CCX:
        flips = [q[i] for i, p in enumerate(g.polarities) if p == 0]
        return [f"x {c};" for c in flips] + [f"ccx {', '.join(q)};"] + [f"x {c};" for c in flips]
    if g.kind == CPHASE:
        return [f"cp({a(g.angle)}) {q[0]}, {q[1]};"]
    if g.kind == SWAP:
        return [f"swap {q[0]}, {q[1]};"]
    if g.kind == DIAGPHASE:
        ph = g.phases
        if len(g.qubits) == 1:
            return [f"gphase({a(ph[0])});", f"p({a(ph[1] - ph[0])}) {q[0]};"]
        if len(g.qubits) == 2:
            alpha, beta = ph[1] - ph[0], ph[2] - ph[0]
            gamma = ph[3] - ph[2] - ph[1] + ph[0]
            return [
                f"gphase({a(ph[0])});",
                f"p({a(alpha)}) {q[0]};",
                f"p({a(beta)}) {q[1]};",
                f"cp({a(gamma)}) {q[0]}, {q[1]};",
            ]
        raise UnsupportedExport("DIAGPHASE export is limited to two qubits")
    raise UnsupportedExport(f"no QASM form for {g.kind}")


def to_qasm3(circuit: Circuit) -> str:
    lines = ["OPENQASM 3.0;", 'include "stdgates.inc";', f"qubit[{circuit.width}] q;"]
    for g in circuit.gates:
        lines.extend(_qasm_gate(g))
    return "\n".join(lines) + "\n"
