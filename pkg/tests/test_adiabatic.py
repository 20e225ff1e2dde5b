from __future__ import annotations

import io
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.integrate import quad

from graylap.adiabatic import (
    EVOLVER_BASIS,
    TRACE_COLUMNS,
    Evolver,
    Potential,
    Ramp,
    Schedule,
    commutator_TV_norm,
    evolve,
    hamiltonian_at,
    magnus1_step_unitary,
    max_trace_deviation,
    potential_operator,
    quadratic_kinetic_operator,
    ramp_average,
    ramp_value,
    relative_errors,
    trace_deviation,
    write_trace_csv,
)
from graylap.encoding import CodeKind, position_permutation
from graylap.laplacian import LatticeSpec, kinetic_operator
from graylap.numerics import InvalidInput, PhysicalUnits, herm_expm, is_unitary


@pytest.fixture(scope="module")
def spec():
    return LatticeSpec(2, PhysicalUnits(140.0, 5.0))


@pytest.fixture(scope="module")
def well(spec):
    return Potential.step_well(spec, -10.0)


@pytest.mark.parametrize("ramp", list(Ramp))
def test_ramp_endpoints(ramp):
    if ramp is not Ramp.CONSTANT:
        assert ramp_value(ramp, 0.0) == 0.0
    assert ramp_value(ramp, 1.0) == pytest.approx(1.0, abs=1e-15)


@given(st.floats(0, 0.99), st.floats(1e-4, 0.5), st.sampled_from(list(Ramp)))
def test_ramp_average_matches_quadrature(s0, width, ramp):
    s1 = min(s0 + width, 1.0)
    ref = quad(lambda s: ramp_value(ramp, s), s0, s1, epsabs=1e-14)[0] / (s1 - s0)
    assert ramp_average(ramp, s0, s1) == pytest.approx(ref, abs=1e-12)


def test_linear_ramp_midpoint():
    s = Schedule(1.0, 8, Ramp.LINEAR)
    assert [s.fbar(k) for k in range(8)] == pytest.approx([(k + 0.5) / 8 for k in range(8)])


def test_schedule_validation():
    with pytest.raises(InvalidInput):
        Schedule(1.0, 0)
    with pytest.raises(InvalidInput):
        Schedule(-1.0, 5)
    with pytest.raises(InvalidInput):
        Schedule(1.0, 5).fbar(5)


def test_step_well_samples(spec, well):
    # the step sits at half the box, N a / 2 = 10 fm
    assert list(well.samples) == [-10.0, -10.0, 10.0, 10.0]
    assert well.params["L_fm"] == 20.0
    assert list(Potential.step_well(spec, -10.0, box_fm=10.0).samples) == [-10.0, 10.0, 10.0, 10.0]


def test_hamiltonian_endpoints(spec, well):
    t = kinetic_operator(spec, CodeKind.BRGC)
    assert np.allclose(hamiltonian_at(0.0, spec, well, CodeKind.BRGC), t)
    h1 = hamiltonian_at(1.0, spec, well, CodeKind.BRGC)
    assert np.allclose(np.diag(h1 - t).real, np.diag(potential_operator(spec, well, CodeKind.BRGC)).real)


def test_encodings_are_similar(spec, well):
    pb = position_permutation(2, CodeKind.BRGC)
    pn = position_permutation(2, CodeKind.BINARY)
    hb = hamiltonian_at(0.4, spec, well, CodeKind.BRGC)
    hn = hamiltonian_at(0.4, spec, well, CodeKind.BINARY)
    assert np.allclose(pb.T @ hb @ pb, pn.T @ hn @ pn)


def test_magnus_step_constant_ramp(spec, well):
    s = Schedule(1.0, 10, Ramp.CONSTANT)
    u = magnus1_step_unitary(spec, well, s, 3, CodeKind.BRGC)
    ref = herm_expm(hamiltonian_at(1.0, spec, well, CodeKind.BRGC), -0.1j)
    assert is_unitary(u) and np.allclose(u, ref)


def test_commutator_norm(spec, well):
    c = commutator_TV_norm(spec, well)
    assert c == pytest.approx(111.3, rel=0.01)
    assert c == pytest.approx(commutator_TV_norm(spec, well, CodeKind.BINARY), abs=1e-10)
    assert c > 2 * spec.hopping**2
    assert commutator_TV_norm(spec, Potential.constant(spec, 3.0)) < 1e-10


def test_plus_state_is_kinetic_eigenstate(spec):
    zero = Potential.constant(spec, 0.0)
    tr = evolve(spec, zero, Schedule(1.0, 20), Evolver.BRGC)
    assert np.allclose(tr.exp_t, tr.exp_t[0], atol=1e-12)


@pytest.mark.parametrize("evolver", list(Evolver))
def test_norm_preserved(spec, well, evolver):
    tr = evolve(spec, well, Schedule(10.0, 400), evolver)
    assert np.max(np.abs(tr.norms - 1)) < 1e-8
    assert len(tr.times) == 401


def test_exact_traces_agree_across_bases(spec, well):
    s = Schedule(10.0, 300)
    a = evolve(spec, well, s, Evolver.EXACT)
    assert EVOLVER_BASIS[Evolver.EXACT] is CodeKind.BRGC
    # the same schedule integrated in the binary basis
    psi = np.full(4, 0.5, dtype=complex)
    t_op = kinetic_operator(spec, CodeKind.BINARY)
    v_op = potential_operator(spec, well, CodeKind.BINARY)
    exp_t = [np.vdot(psi, t_op @ psi).real]
    exp_v = [np.vdot(psi, v_op @ psi).real]
    for k in range(s.steps):
        psi = magnus1_step_unitary(spec, well, s, k, CodeKind.BINARY) @ psi
        exp_t.append(np.vdot(psi, t_op @ psi).real)
        exp_v.append(np.vdot(psi, v_op @ psi).real)
    assert np.allclose(a.exp_t, exp_t, atol=1e-10)
    assert np.allclose(a.exp_v, exp_v, atol=1e-10)


def test_gray_and_binary_circuits_agree(spec, well):
    s = Schedule(10.0, 300)
    bg = evolve(spec, well, s, Evolver.BRGC)
    bn = evolve(spec, well, s, Evolver.BINARY)
    assert np.allclose(bg.exp_t, bn.exp_t, atol=1e-10)
    assert np.allclose(bg.exp_v, bn.exp_v, atol=1e-10)


def test_circuit_error_shrinks_with_steps(spec, well):
    errs = []
    for steps in (250, 500):
        s = Schedule(10.0, steps)
        errs.append(trace_deviation(evolve(spec, well, s, Evolver.BRGC), evolve(spec, well, s)))
    assert 3.0 < errs[0] / errs[1] < 5.0


def test_max_trace_deviation_bounds_final(spec, well):
    s = Schedule(10.0, 200)
    tr, ex = evolve(spec, well, s, Evolver.BRGC), evolve(spec, well, s)
    assert max_trace_deviation(tr, ex) >= trace_deviation(tr, ex)


def test_split_order_changes_result(spec, well):
    s = Schedule(10.0, 200)
    a = evolve(spec, well, s, Evolver.BRGC)
    b = evolve(spec, well, s, Evolver.BRGC, potential_first=True)
    assert not np.isclose(a.final[1], b.final[1], rtol=1e-8)


def test_qft_follows_quadratic_theory(spec, well):
    s = Schedule(10.0, 500)
    q = evolve(spec, well, s, Evolver.QFT)
    eq = evolve(spec, well, s, Evolver.EXACT_QUADRATIC)
    ex = evolve(spec, well, s)
    assert max(relative_errors(q, eq)) < 3e-2
    assert abs(eq.final[0] - ex.final[0]) > 0.05


def test_quadratic_kinetic_is_hermitian(spec):
    t = quadratic_kinetic_operator(spec)
    assert np.allclose(t, t.conj().T)
    assert np.allclose(t @ np.ones(4), 0)


def test_bad_inputs(spec, well):
    with pytest.raises(InvalidInput):
        evolve(spec, well, Schedule(1.0, 2), initial=np.ones(4))
    with pytest.raises(InvalidInput):
        evolve(LatticeSpec(1, spec.units), Potential.constant(LatticeSpec(1, spec.units), 0), Schedule(1, 2), Evolver.BRGC)


def test_trace_csv(spec, well):
    s = Schedule(1.0, 3)
    traces = [evolve(spec, well, s, Evolver.BRGC), evolve(spec, well, s)]
    fh = io.StringIO()
    write_trace_csv(traces, fh, ["run: 1"])
    lines = fh.getvalue().splitlines()
    assert lines[1] == ",".join(TRACE_COLUMNS)
    assert lines[2].split(",")[2] == "brgc" and lines[-1].split(",")[2] == "exact"
    assert len(lines) == 2 + 2 * 4
    assert math.isfinite(float(lines[2].split(",")[3]))
