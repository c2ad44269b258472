import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qrotor import bitalgebra
from qrotor.bitalgebra import fwht, fwht_naive, parity_sign
from qrotor.errors import InvalidInputError

from .conftest import random_complex


def test_parity_sign_identity_row():
    assert all(parity_sign(0, k) == 1 for k in range(64))


def test_parity_sign_single_bit():
    assert parity_sign(1, 1) == -1
    assert parity_sign(1, 2) == 1
    assert parity_sign(3, 1) == -1
    assert parity_sign(3, 3) == 1


def test_parity_rows_sum_to_projector_diagonal():
    # (1/4) sum_l z(l) = diag(1, 0, 0, 0)
    diag = [sum(parity_sign(l, k) for l in range(4)) / 4 for k in range(4)]
    assert diag == [1, 0, 0, 0]
    for l in range(4):
        assert sum(parity_sign(l, k) for k in range(4)) == 4 * (l == 0)


def test_parity_sign_symmetric_and_character():
    for n in range(1, 7):
        N = 1 << n
        for l, m in itertools.product(range(N), repeat=2):
            assert parity_sign(l, m) == parity_sign(m, l)
        k = np.arange(N)
        for l, m in itertools.product(range(N), repeat=2):
            lhs = bitalgebra.parity_signs(l ^ m, n)
            rhs = bitalgebra.parity_signs(l, n) * bitalgebra.parity_signs(m, n)
            assert np.array_equal(lhs, rhs), (l, m, k)


def test_walsh_matrix_matches_parity_sign():
    W = bitalgebra.walsh_matrix(3)
    for l, k in itertools.product(range(8), repeat=2):
        assert W[l, k] == parity_sign(l, k)


def test_fwht_delta_maps_to_constant(backend):
    np.testing.assert_array_equal(fwht([1, 0, 0, 0], backend=backend), [1, 1, 1, 1])


def test_fwht_uniform_maps_to_delta(backend):
    np.testing.assert_allclose(fwht([0.25] * 4, backend=backend), [1, 0, 0, 0], atol=0)


def test_fwht_naive_small():
    np.testing.assert_array_equal(fwht_naive([1, 0]), [1, 1])
    np.testing.assert_array_equal(fwht_naive([0, 1]), [1, -1])


def test_fwht_twice_is_n_times(backend, rng):
    v = random_complex(rng, 4)
    np.testing.assert_allclose(fwht(fwht(v, backend=backend), backend=backend), 4 * v, rtol=1e-14)


def test_fwht_agrees_with_naive(backend, rng):
    worst = 0.0
    for i in range(1000):
        n = 1 + i % 10
        v = random_complex(rng, 1 << n)
        worst = max(worst, np.max(np.abs(fwht(v, backend=backend) - fwht_naive(v))))
    assert worst < 1e-12


@pytest.mark.parametrize("n", range(0, 13))
def test_involution_and_parseval(backend, rng, n):
    v = random_complex(rng, 1 << n)
    N = 1 << n
    X = fwht(v, backend=backend)
    back = fwht(X, backend=backend)
    assert np.max(np.abs(back - N * v)) / np.max(np.abs(N * v)) < 1e-12
    lhs = np.sum(np.abs(X) ** 2)
    rhs = N * np.sum(np.abs(v) ** 2)
    assert abs(lhs - rhs) / rhs < 1e-12


def test_backends_agree(rng):
    v = random_complex(rng, 1 << 12)
    outs = [fwht(v, backend=b) for b in bitalgebra.available_backends()]
    for o in outs[1:]:
        np.testing.assert_allclose(o, outs[0], atol=1e-9)


def test_fwht_preserves_real_dtype_and_input(backend):
    v = np.array([1.0, 2.0, 3.0, 4.0])
    out = fwht(v, backend=backend)
    assert out.dtype == np.float64
    np.testing.assert_array_equal(v, [1, 2, 3, 4])
    np.testing.assert_array_equal(out, [10, -2, -4, 0])


def test_fwht_along_axis(rng):
    M = random_complex(rng, (8, 3))
    out = fwht(M, axis=0)
    for j in range(3):
        np.testing.assert_allclose(out[:, j], fwht_naive(M[:, j]), atol=1e-12)


@pytest.mark.parametrize("bad", [[], [1, 2, 3], np.zeros(6), np.zeros(12)])
def test_fwht_rejects_non_power_of_two(bad):
    with pytest.raises(InvalidInputError):
        fwht(bad)
    with pytest.raises(InvalidInputError):
        fwht_naive(bad)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 6).flatmap(
    lambda n: st.lists(st.floats(-1e3, 1e3), min_size=1 << n, max_size=1 << n)))
def test_fwht_linear_and_exact_on_integers(values):
    v = np.round(np.array(values))
    np.testing.assert_array_equal(fwht(v), fwht_naive(v))


def test_fortran_ordered_input(rng, backend):
    a = np.asfortranarray(rng.normal(size=(8, 16)))
    expected = np.array([fwht_naive(row) for row in a])
    np.testing.assert_allclose(fwht(a, backend=backend), expected, atol=1e-12)
    np.testing.assert_allclose(fwht(a, axis=0, backend=backend),
                               np.array([fwht_naive(col) for col in a.T]).T, atol=1e-12)
