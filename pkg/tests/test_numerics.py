from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from graylap.numerics import (
    HBARC,
    PAULI,
    SX,
    SY,
    SZ,
    InvalidInput,
    PhysicalUnits,
    as_operator,
    basis_state,
    commutator,
    distance_upto_global_phase,
    embed,
    herm_expm,
    is_unitary,
    normalize,
    pauli_op,
    plus_state,
    projector_product,
    spectral_norm,
)


def random_hermitian(rng, d):
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return a + a.conj().T


def random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.mark.parametrize("label", ["X", "Y", "Z"])
def test_pauli_norm_is_one(label):
    assert spectral_norm(PAULI[label]) == pytest.approx(1.0, abs=1e-14)


def test_spectral_norm_matches_eigenvalues_for_hermitian():
    h = random_hermitian(np.random.default_rng(1), 8)
    assert spectral_norm(h) == pytest.approx(np.max(np.abs(np.linalg.eigvalsh(h))), rel=1e-12)


def test_spectral_norm_rejects_nan():
    with pytest.raises(InvalidInput):
        spectral_norm(np.array([[np.nan, 0], [0, 1]]))


def test_herm_expm_single_qubit_rotation():
    assert np.allclose(herm_expm(SX, 1j * math.pi / 2), 1j * SX, atol=1e-14)


def test_herm_expm_agrees_with_scipy():
    h = random_hermitian(np.random.default_rng(2), 16)
    assert np.allclose(herm_expm(h, -0.37j), expm(-0.37j * h), atol=1e-11)


def test_herm_expm_rejects_non_hermitian():
    with pytest.raises(InvalidInput):
        herm_expm(np.array([[0, 1], [0, 0]]), 1j)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-3, 3))
def test_herm_expm_is_unitary(seed, t):
    h = random_hermitian(np.random.default_rng(seed), 4)
    assert is_unitary(herm_expm(h, 1j * t))


def test_embed_puts_operator_on_named_qubit():
    # qubit 0 is the least-significant bit of the basis index
    x0 = embed({0: SX}, 2)
    assert np.allclose(x0 @ basis_state(0, 2), basis_state(1, 2))
    x1 = pauli_op("X", 1, 2)
    assert np.allclose(x1 @ basis_state(0, 2), basis_state(2, 2))


def test_projector_product_is_diagonal_indicator():
    p = projector_product([0, 2], 3)
    expected = [1.0 if (i & 1) == 0 and (i & 4) == 0 else 0.0 for i in range(8)]
    assert np.allclose(np.diag(p), expected)


def test_pauli_commutation():
    assert np.allclose(commutator(SX, SY), 2j * SZ)


@pytest.mark.parametrize("phase", [0.0, 0.3, math.pi, -2.0])
def test_global_phase_is_quotiented(phase):
    u = random_unitary(np.random.default_rng(3), 8)
    assert distance_upto_global_phase(u, np.exp(1j * phase) * u) < 1e-12


def test_global_phase_distance_positive_for_different_unitaries():
    assert distance_upto_global_phase(SX, SZ) == pytest.approx(math.sqrt(2), rel=1e-6)


def test_distance_dimension_mismatch():
    with pytest.raises(InvalidInput):
        distance_upto_global_phase(np.eye(2), np.eye(4))


def test_as_operator_validation():
    with pytest.raises(InvalidInput):
        as_operator(np.eye(3))
    with pytest.raises(InvalidInput):
        as_operator(np.ones((2, 3)))
    with pytest.raises(InvalidInput):
        as_operator(np.array([[0, 1], [0, 0]]), hermitian=True)


def test_units_hopping():
    u = PhysicalUnits(140.0, 5.0)
    assert u.spacing_natural == pytest.approx(5.0 / HBARC)
    assert u.hopping == pytest.approx(HBARC**2 / (2 * 140 * 25))
    with pytest.raises(InvalidInput):
        PhysicalUnits(-1.0, 1.0)


def test_states():
    assert np.linalg.norm(plus_state(3)) == pytest.approx(1.0)
    assert np.allclose(normalize([3, 4]), [0.6, 0.8])
    with pytest.raises(InvalidInput):
        normalize([0, 0])
