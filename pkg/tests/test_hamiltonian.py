import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrotor.errors import InvalidInputError
from qrotor.hamiltonian import (
    CoupledQubitParams,
    build_hamiltonian,
    build_hamiltonian_operator_form,
    eigenenergies,
    eigenstates,
    parametrize_eigenstates,
)
from qrotor.rotor import synthesize
from qrotor.states import max_deviation


def random_params(rng):
    return CoupledQubitParams(*rng.uniform(-10, 10, 4))


def test_matrix_pattern():
    w0, w1, w2, lam = 1.5, 0.7, -0.3, 0.25
    H = build_hamiltonian(CoupledQubitParams(w0, w1, w2, lam)).matrix
    expected = np.array([
        [w0 + w1 + w2 + lam / 2, 0, 0, 0],
        [0, w0 + w1 - w2 - lam / 2, lam, 0],
        [0, lam, w0 - w1 + w2 - lam / 2, 0],
        [0, 0, 0, w0 - w1 - w2 + lam / 2],
    ])
    np.testing.assert_array_equal(H, expected)
    np.testing.assert_array_equal(H, H.conj().T)


def test_decoupled_limit():
    p = CoupledQubitParams(2.0, 0.5, 0.25, 0.0)
    H = build_hamiltonian(p).matrix
    np.testing.assert_array_equal(H, np.diag([2.75, 2.25, 1.75, 1.25]))
    np.testing.assert_allclose(eigenenergies(p), [2.75, 2.25, 1.75, 1.25])
    for k, s in enumerate(eigenstates(p).eigenstates):
        np.testing.assert_allclose(s.coeffs, np.eye(4)[k], atol=1e-15)


def test_operator_form_maps_onto_matrix(rng):
    for _ in range(50):
        E0, g1, g2, B, lam = rng.uniform(-5, 5, 5)
        p = CoupledQubitParams.from_operator_form(E0, g1, g2, B, lam)
        np.testing.assert_allclose(build_hamiltonian_operator_form(E0, g1, g2, B, lam).matrix,
                                   build_hamiltonian(p).matrix, atol=1e-12)


def test_closed_form_spectrum_against_dense_eigensolver(rng):
    worst = 0.0
    for _ in range(1000):
        p = random_params(rng)
        H = build_hamiltonian(p).matrix
        E = eigenenergies(p)
        worst = max(worst, np.max(np.abs(np.sort(E) - np.linalg.eigvalsh(H))))
        assert abs(E.sum() - np.trace(H).real) < 1e-10
    assert worst < 1e-10


def test_mixed_pair_formula(rng):
    p = random_params(rng)
    root = math.sqrt(p.delta ** 2 + p.lam ** 2)
    E = eigenenergies(p)
    assert E[1] == pytest.approx(p.omega0 - p.lam / 2 + root)
    assert E[2] == pytest.approx(p.omega0 - p.lam / 2 - root)
    assert p.delta == p.omega1 - p.omega2


def test_equal_frequencies():
    p = CoupledQubitParams(1.0, 0.4, 0.4, 0.6)
    E = eigenenergies(p)
    np.testing.assert_allclose(E[1:3], [1.0 - 0.3 + 0.6, 1.0 - 0.3 - 0.6])
    spec = eigenstates(p)
    s = 1 / math.sqrt(2)
    np.testing.assert_allclose(spec.eigenstates[1].coeffs, [0, s, s, 0], atol=1e-15)
    np.testing.assert_allclose(spec.eigenstates[2].coeffs, [0, -s, s, 0], atol=1e-15)


def test_fully_degenerate_block():
    spec = eigenstates(CoupledQubitParams(1.0, 0.3, 0.3, 0.0))
    np.testing.assert_array_equal(spec.eigenstates[1].coeffs, [0, 1, 0, 0])
    np.testing.assert_array_equal(spec.eigenstates[2].coeffs, [0, 0, 1, 0])


def test_eigenpairs_and_orthonormality(rng):
    for _ in range(200):
        p = random_params(rng)
        H = build_hamiltonian(p).matrix
        spec = eigenstates(p)
        V = np.column_stack([s.coeffs for s in spec.eigenstates])
        for E, v in zip(spec.energies, V.T):
            assert np.linalg.norm(H @ v - E * v) < 1e-10
        assert np.max(np.abs(V.conj().T @ V - np.eye(4))) < 1e-10
        np.testing.assert_array_equal(V[:, 0], [1, 0, 0, 0])
        np.testing.assert_array_equal(V[:, 3], [0, 0, 0, 1])


def test_eigenvectors_overlap_dense_solver(rng):
    for _ in range(200):
        p = random_params(rng)
        w, U = np.linalg.eigh(build_hamiltonian(p).matrix)
        spec = eigenstates(p)
        for E, s in zip(spec.energies, spec.eigenstates):
            k = int(np.argmin(np.abs(w - E)))
            if np.min(np.abs(np.delete(w, k) - E)) < 1e-6:
                continue  # degenerate level, eigenvector not unique
            assert abs(np.vdot(U[:, k], s.coeffs)) > 1 - 1e-10


@settings(max_examples=25, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=4, max_size=4))
def test_eigenstates_parametrized(vals):
    p = CoupledQubitParams(*vals)
    spec = eigenstates(p)
    for a, s in zip(parametrize_eigenstates(p), spec.eigenstates):
        assert max_deviation(synthesize(a).coeffs, s.coeffs) < 1e-9


def test_ground_basis_state_gets_zero_angles():
    a = parametrize_eigenstates(CoupledQubitParams(0.0, 1.0, 2.0, 0.5))[0]
    assert not np.any(a.theta) and not np.any(a.phi)


def test_params_validation_and_dict():
    with pytest.raises(InvalidInputError):
        CoupledQubitParams(np.nan, 0, 0, 0)
    with pytest.raises(InvalidInputError):
        CoupledQubitParams("1", 0, 0, 0)
    with pytest.raises(InvalidInputError):
        CoupledQubitParams.from_dict({"omega0": 1.0})
    p = CoupledQubitParams(1, 2, 3, 4)
    assert p.to_dict() == {"omega0": 1.0, "omega1": 2.0, "omega2": 3.0, "lambda": 4.0}
    assert CoupledQubitParams.from_dict(p.to_dict()) == p


def test_report_dict():
    doc = eigenstates(CoupledQubitParams(0, 1, 0.5, 0.2)).to_dict()
    assert list(doc) == ["delta", "energies", "eigenstates"]
    assert len(doc["energies"]) == 4 and doc["delta"] == 0.5
