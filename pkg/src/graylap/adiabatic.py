"""Adiabatic evolution of a particle on a periodic lattice under a ramped potential.

Each of the ``steps`` uniform intervals uses the time-averaged ramp value
(first-order Magnus), ``U_k = exp(-i dt (T + fbar_k V))``.  Circuit evolvers
split this as ``exp(-i dt fbar_k V) K(dt)`` with ``K`` the kinetic circuit of
their encoding at ``lambda = dt / (2 M a^2)``: the kinetic circuit acts first
and the diagonal potential phase second.
"""
from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .builders import BuilderConfig, Dispersion, build_binary_step, build_brgc_step, build_qft_kinetic_step, kinetic_phases
from .circuit import Circuit, apply, diagphase
from .encoding import CodeKind, position_map
from .laplacian import LatticeSpec, kinetic_operator
from .numerics import InvalidInput, herm_expm, plus_state, spectral_norm


class Ramp(enum.Enum):
    SIN2 = "sin2"
    LINEAR = "linear"
    CONSTANT = "constant"


def ramp_value(ramp: Ramp, s: float) -> float:
    if ramp is Ramp.SIN2:
        return math.sin(math.pi * s / 2) ** 2
    if ramp is Ramp.LINEAR:
        return s
    return 1.0


def ramp_average(ramp: Ramp, s0: float, s1: float) -> float:
    """Exact mean of the ramp over ``[s0, s1]``."""
    if ramp is Ramp.CONSTANT:
        return 1.0
    if ramp is Ramp.LINEAR:
        return 0.5 * (s0 + s1)
    # sin^2(pi s/2) = (1 - cos(pi s)) / 2
    return 0.5 - (math.sin(math.pi * s1) - math.sin(math.pi * s0)) / (2 * math.pi * (s1 - s0))


@dataclass(frozen=True)
class Schedule:
    total_time: float
    steps: int
    ramp: Ramp = Ramp.SIN2

    def __post_init__(self):
        if self.steps < 1:
            raise InvalidInput("schedule needs at least one step")
        if not self.total_time > 0:
            raise InvalidInput("total time must be positive")

    @property
    def dt(self) -> float:
        return self.total_time / self.steps

    def fbar(self, k: int) -> float:
        if not 0 <= k < self.steps:
            raise InvalidInput(f"step index {k} outside [0, {self.steps})")
        return ramp_average(self.ramp, k / self.steps, (k + 1) / self.steps)


@dataclass(frozen=True)
class Potential:
    kind: str
    params: dict
    samples: np.ndarray = field(repr=False)

    @classmethod
    def step_well(cls, spec: LatticeSpec, v0: float, box_fm: float | None = None) -> Potential:
        """``+v0`` for ``r a < L/2`` and ``-v0`` beyond; ``L`` defaults to the box ``N a``."""
        a = spec.units.spacing_fm
        box = spec.size * a if box_fm is None else box_fm
        r = np.arange(spec.size)
        samples = np.where(r * a < box / 2, v0, -v0).astype(float)
        return cls("step", {"V0": v0, "L_fm": box}, samples)

    @classmethod
    def harmonic(cls, spec: LatticeSpec, omega: float) -> Potential:
        x = (np.arange(spec.size) - spec.size / 2) * spec.units.spacing_natural
        return cls("harmonic", {"omega": omega}, 0.5 * spec.units.mass * omega**2 * x**2)

    @classmethod
    def constant(cls, spec: LatticeSpec, value: float) -> Potential:
        return cls("constant", {"value": value}, np.full(spec.size, float(value)))


def potential_diagonal(spec: LatticeSpec, pot: Potential, code: CodeKind) -> np.ndarray:
    """Potential samples reordered to basis-index order of ``code``."""
    out = np.empty(spec.size)
    out[position_map(spec.n, code)] = pot.samples
    return out


def potential_operator(spec: LatticeSpec, pot: Potential, code: CodeKind) -> np.ndarray:
    return np.diag(potential_diagonal(spec, pot, code)).astype(complex)


def quadratic_kinetic_operator(spec: LatticeSpec) -> np.ndarray:
    """Continuum-dispersion kinetic operator on the binary basis."""
    N = spec.size
    j = np.arange(N)
    f = np.exp(2j * np.pi * np.outer(j, j) / N) / math.sqrt(N)
    e = -kinetic_phases(spec, 1.0, Dispersion.QUADRATIC)
    t_pos = f.conj().T @ np.diag(e) @ f
    idx = position_map(spec.n, CodeKind.BINARY)
    out = np.empty_like(t_pos)
    out[np.ix_(idx, idx)] = t_pos
    return out


def hamiltonian_at(s: float, spec: LatticeSpec, pot: Potential, code: CodeKind, ramp: Ramp = Ramp.SIN2) -> np.ndarray:
    return kinetic_operator(spec, code) + ramp_value(ramp, s) * potential_operator(spec, pot, code)


def magnus1_step_unitary(spec: LatticeSpec, pot: Potential, schedule: Schedule, k: int, code: CodeKind) -> np.ndarray:
    h = kinetic_operator(spec, code) + schedule.fbar(k) * potential_operator(spec, pot, code)
    return herm_expm(h, -1j * schedule.dt)


def commutator_TV_norm(spec: LatticeSpec, pot: Potential, code: CodeKind = CodeKind.BRGC) -> float:
    t = kinetic_operator(spec, code)
    v = potential_operator(spec, pot, code)
    return spectral_norm(t @ v - v @ t)


class Evolver(enum.Enum):
    EXACT = "exact"
    EXACT_QUADRATIC = "exact-quadratic"
    BRGC = "brgc"
    BINARY = "binary"
    QFT = "qft"


EVOLVER_BASIS = {
    Evolver.EXACT: CodeKind.BRGC,
    Evolver.EXACT_QUADRATIC: CodeKind.BINARY,
    Evolver.BRGC: CodeKind.BRGC,
    Evolver.BINARY: CodeKind.BINARY,
    Evolver.QFT: CodeKind.BINARY,
}


@dataclass
class EvolutionTrace:
    evolver: str
    basis: str
    times: np.ndarray
    exp_t: np.ndarray
    exp_v: np.ndarray
    norms: np.ndarray
    final_state: np.ndarray = field(repr=False)

    @property
    def final(self) -> tuple[float, float]:
        return float(self.exp_t[-1]), float(self.exp_v[-1])


def _kinetic_circuit(evolver: Evolver, spec: LatticeSpec, dt: float) -> Circuit:
    lam = dt * spec.hopping
    if evolver is Evolver.BRGC:
        return build_brgc_step(BuilderConfig(spec.n, lam))
    if evolver is Evolver.BINARY:
        if spec.n > 8:
            raise InvalidInput("binary circuit evolver supports n <= 8")
        return build_binary_step(spec.n, lam)
    return build_qft_kinetic_step(spec, dt, Dispersion.QUADRATIC)


def evolve(
    spec: LatticeSpec,
    pot: Potential,
    schedule: Schedule,
    evolver: Evolver = Evolver.EXACT,
    initial=None,
    *,
    potential_first: bool = False,
) -> EvolutionTrace:
    """Run one evolver and record ``<T>`` and ``<V>`` before the first and after every step.

    ``initial`` is a statevector on the system qubits in the evolver's basis;
    the default ``|+>^n`` is uniform in every basis.  ``<T>`` uses the
    finite-difference kinetic operator except for the quadratic-dispersion
    evolvers.  ``potential_first`` swaps the two factors of each split step.
    """
    if spec.n < 2 and evolver in (Evolver.BRGC, Evolver.BINARY):
        raise InvalidInput(f"{evolver.value} evolver needs n >= 2")
    if spec.n > 10:
        raise InvalidInput("n must not exceed 10")
    code = EVOLVER_BASIS[evolver]
    psi = plus_state(spec.n) if initial is None else np.asarray(initial, dtype=complex)
    if psi.shape != (spec.size,):
        raise InvalidInput("initial state does not match the lattice")
    if abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise InvalidInput("initial state must be normalised")

    quadratic = evolver in (Evolver.QFT, Evolver.EXACT_QUADRATIC)
    t_op = quadratic_kinetic_operator(spec) if quadratic else kinetic_operator(spec, code)
    v_diag = potential_diagonal(spec, pot, code)
    dt = schedule.dt

    exp_t = [np.vdot(psi, t_op @ psi).real]
    exp_v = [np.vdot(psi, v_diag * psi).real]
    norms = [np.linalg.norm(psi)]

    if evolver in (Evolver.EXACT, Evolver.EXACT_QUADRATIC):
        for k in range(schedule.steps):
            h = t_op + schedule.fbar(k) * np.diag(v_diag)
            psi = herm_expm(h, -1j * dt) @ psi
            exp_t.append(np.vdot(psi, t_op @ psi).real)
            exp_v.append(np.vdot(psi, v_diag * psi).real)
            norms.append(np.linalg.norm(psi))
    else:
        kin = _kinetic_circuit(evolver, spec, dt)
        d = spec.size
        full = np.zeros(2**kin.width, dtype=complex)
        full[:d] = psi
        system = list(range(spec.n))
        for k in range(schedule.steps):
            pot_gate = diagphase(-dt * schedule.fbar(k) * v_diag, system)
            gates = (pot_gate, *kin.gates) if potential_first else (*kin.gates, pot_gate)
            step = Circuit(kin.width, kin.system_qubits, gates)
            full = apply(step, full)
            psi = full[:d]
            exp_t.append(np.vdot(psi, t_op @ psi).real)
            exp_v.append(np.vdot(psi, v_diag * psi).real)
            norms.append(np.linalg.norm(full))

    times = dt * np.arange(schedule.steps + 1)
    return EvolutionTrace(evolver.value, code.value, times, np.array(exp_t), np.array(exp_v), np.array(norms), psi)


def relative_errors(trace: EvolutionTrace, reference: EvolutionTrace) -> tuple[float, float]:
    """Final-step relative deviation of ``<T>`` and ``<V>`` from the reference."""
    (t, v), (t0, v0) = trace.final, reference.final
    return abs(t - t0) / abs(t0), abs(v - v0) / abs(v0)


def trace_deviation(trace: EvolutionTrace, reference: EvolutionTrace) -> float:
    """``|<T> - <T>_ref| + |<V> - <V>_ref|`` at the final step, in MeV."""
    (t, v), (t0, v0) = trace.final, reference.final
    return abs(t - t0) + abs(v - v0)


def max_trace_deviation(trace: EvolutionTrace, reference: EvolutionTrace) -> float:
    """Largest ``|<T> - <T>_ref| + |<V> - <V>_ref|`` over all recorded steps."""
    return float(np.max(np.abs(trace.exp_t - reference.exp_t) + np.abs(trace.exp_v - reference.exp_v)))


TRACE_COLUMNS = ["step", "time_MeVinv", "evolver", "expT_MeV", "expV_MeV"]


def write_trace_csv(traces, fh, header_lines: list[str] | None = None) -> None:
    fmt = lambda x: format(float(x), ".17g")  # noqa: E731
    for line in header_lines or []:
        fh.write(f"# {line}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(TRACE_COLUMNS)
    for tr in sorted(traces, key=lambda t: t.evolver):
        for i, (t, et, ev) in enumerate(zip(tr.times, tr.exp_t, tr.exp_v)):
            w.writerow([i, fmt(t), tr.evolver, fmt(et), fmt(ev)])
