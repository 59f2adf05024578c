import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from su2factor.core import (
    expm_su2,
    frobenius_distance,
    from_quaternion,
    haar_random,
    matrix_to_vec,
    to_quaternion,
    trace_inner,
    unitary_residual,
    vec_to_matrix,
)
from su2factor.errors import NotInAlgebra

from conftest import SX, SY, pauli_matrix

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
vec3 = st.tuples(finite, finite, finite)


def taylor(M, terms=25):
    out = np.zeros((2, 2), dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(terms):
        out += term
        term = term @ M / (k + 1)
    return out


@pytest.mark.parametrize(
    "v, expected",
    [
        ((0, 0, 0), np.zeros((2, 2))),
        ((1, 0, 0), np.array([[0, 1j], [1j, 0]])),
        ((0, 0, 1), np.array([[1j, 0], [0, -1j]])),
    ],
)
def test_vec_to_matrix_examples(v, expected):
    np.testing.assert_array_equal(vec_to_matrix(v), expected)


@given(vec3)
def test_vec_to_matrix_matches_pauli_sum(v):
    np.testing.assert_allclose(vec_to_matrix(v), pauli_matrix(v), rtol=0, atol=1e-9 * (1 + max(map(abs, v))))


def test_matrix_to_vec_examples():
    np.testing.assert_array_equal(matrix_to_vec(1j * SY), [0, 1, 0])
    np.testing.assert_array_equal(matrix_to_vec(np.zeros((2, 2))), [0, 0, 0])
    with pytest.raises(NotInAlgebra):
        matrix_to_vec(np.eye(2))


@pytest.mark.parametrize("M", [SX, 1j * np.eye(2), np.ones((3, 3)), [[1j, 0], [0, 1j]]])
def test_matrix_to_vec_rejects(M):
    with pytest.raises(NotInAlgebra):
        matrix_to_vec(M)


@given(vec3)
def test_round_trip(v):
    back = matrix_to_vec(vec_to_matrix(v))
    assert np.linalg.norm(back - np.array(v)) <= 1e-14 * np.linalg.norm(v)


def test_round_trip_1000(rng):
    for _ in range(1000):
        v = rng.normal(size=3) * 10.0 ** rng.uniform(-8, 8)
        assert np.linalg.norm(matrix_to_vec(vec_to_matrix(v)) - v) <= 1e-14 * np.linalg.norm(v)


def test_expm_examples():
    np.testing.assert_array_equal(expm_su2((0, 0, 0)), np.eye(2))
    assert frobenius_distance(expm_su2((math.pi, 0, 0)), -np.eye(2)) < 1e-15
    assert frobenius_distance(expm_su2((math.pi / 2, 0, 0)), 1j * SX) < 1e-15


def test_expm_small_angle_branch():
    for r in (1e-9, 3e-9, 9.9e-9):
        v = np.array([r, -r, 0.5 * r])
        assert frobenius_distance(expm_su2(v), taylor(pauli_matrix(v), 6)) < 1e-16


def test_expm_matches_taylor(rng):
    for _ in range(1000):
        d = rng.normal(size=3)
        v = d / np.linalg.norm(d) * rng.uniform(0, math.pi)
        assert frobenius_distance(expm_su2(v), taylor(pauli_matrix(v))) <= 1e-12


def test_expm_periodicity(rng):
    for _ in range(1000):
        d = rng.normal(size=3)
        r = rng.uniform(0.1, 6.0)
        v = d / np.linalg.norm(d) * r
        assert frobenius_distance(expm_su2(v), expm_su2(v * (1 + 2 * math.pi / r))) <= 1e-12


@given(vec3)
def test_expm_lands_in_su2(v):
    assert unitary_residual(expm_su2(v)) < 1e-12


@pytest.mark.parametrize(
    "A, B, expected",
    [
        (1j * SX, 1j * SX, 2.0),
        (1j * SX, 1j * SY, 0.0),
        (pauli_matrix((1, 2, 3)), pauli_matrix((1, 2, 3)), 28.0),
    ],
)
def test_trace_inner_examples(A, B, expected):
    assert trace_inner(A, B) == pytest.approx(expected, abs=1e-14)


def test_trace_inner_identity(rng):
    for _ in range(1000):
        v, w = rng.normal(size=3), rng.normal(size=3)
        assert abs(trace_inner(vec_to_matrix(v), vec_to_matrix(w)) - 2 * v @ w) <= 1e-12


def test_frobenius_distance_examples():
    I = np.eye(2)
    assert frobenius_distance(I, I) == 0
    assert frobenius_distance(I, -I) == pytest.approx(2 * math.sqrt(2), abs=1e-15)
    # entrywise: |1|^2 + |-i|^2 + |-i|^2 + |1|^2 = 4
    assert frobenius_distance(I, 1j * SX) == pytest.approx(2.0, abs=1e-15)


def test_frobenius_distance_symmetric(rng):
    U, W = haar_random(1), haar_random(2)
    assert frobenius_distance(U, W) == frobenius_distance(W, U) > 0


def test_haar_deterministic():
    np.testing.assert_array_equal(haar_random(42), haar_random(42))
    assert not np.array_equal(haar_random(42), haar_random(43))


@pytest.mark.parametrize("seed", range(20))
def test_haar_is_special_unitary(seed):
    U = haar_random(seed)
    assert abs(np.linalg.det(U) - 1) <= 1e-12
    np.testing.assert_allclose(np.linalg.norm(U, axis=0), 1.0, atol=1e-12)
    assert np.linalg.norm(U @ U.conj().T - np.eye(2)) <= 1e-12


def test_haar_trace_moment():
    # E|tr U|^2 = 1 under Haar measure on SU(2)
    values = [abs(np.trace(haar_random(s))) ** 2 for s in range(10_000)]
    assert abs(np.mean(values) - 1.0) <= 0.05


def test_quaternion_round_trip(rng):
    for _ in range(100):
        q = rng.normal(size=4)
        q /= np.linalg.norm(q)
        np.testing.assert_allclose(to_quaternion(from_quaternion(*q)), q, atol=1e-15)


def test_quaternion_matches_exponential():
    t, n = 0.8, np.array([0.6, 0.0, 0.8])
    q = to_quaternion(expm_su2(t * n))
    np.testing.assert_allclose(q, [math.cos(t), *(math.sin(t) * n)], atol=1e-15)
