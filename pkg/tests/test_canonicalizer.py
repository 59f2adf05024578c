import math

import numpy as np
import pytest

from su2factor.canonicalizer import (
    GeneratorPair,
    adjoint_rotation,
    canonicalize,
    givens_y,
    givens_z,
    lift_rotation,
    nulling_rotation,
)
from su2factor.core import expm_su2, haar_random, matrix_to_vec, vec_to_matrix
from su2factor.errors import DependentGenerators, NotARotation

from conftest import SX, SY, SZ, random_pair_vectors


def conjugation_oracle(V):
    """Columns read off from V sigma_j V^dagger = sum_i R_ij sigma_i."""
    R = np.empty((3, 3))
    Vd = V.conj().T
    for j, Sj in enumerate((SX, SY, SZ)):
        C = V @ Sj @ Vd
        for i, Si in enumerate((SX, SY, SZ)):
            R[i, j] = 0.5 * np.trace(Si @ C).real
    return R


def test_adjoint_examples():
    np.testing.assert_array_equal(adjoint_rotation(np.eye(2)), np.eye(3))
    np.testing.assert_array_equal(adjoint_rotation(-np.eye(2)), np.eye(3))
    R = adjoint_rotation(expm_su2((0, 0, math.pi / 4)))
    expected = np.array([[0, 1, 0], [-1, 0, 0], [0, 0, 1]], dtype=float)
    np.testing.assert_allclose(R, expected, atol=1e-15)
    np.testing.assert_allclose(R @ [1, 0, 0], [0, -1, 0], atol=1e-15)


def test_adjoint_matches_oracle(rng):
    for s in range(200):
        V = haar_random(s)
        np.testing.assert_allclose(adjoint_rotation(V), conjugation_oracle(V), atol=1e-14)


def test_adjoint_is_rotation():
    for s in range(100):
        R = adjoint_rotation(haar_random(s))
        assert np.linalg.norm(R @ R.T - np.eye(3)) <= 1e-12
        assert abs(np.linalg.det(R) - 1) <= 1e-12


def test_exponential_rotates_by_minus_twice_angle():
    # expm_su2(t n) acts as the rotation about n by -2t
    t = 0.37
    np.testing.assert_allclose(adjoint_rotation(expm_su2((0, 0, t))), givens_z(-2 * t), atol=1e-15)
    np.testing.assert_allclose(adjoint_rotation(expm_su2((0, t, 0))), givens_y(-2 * t), atol=1e-15)


def test_double_cover_exact():
    for s in range(1000):
        V = haar_random(s)
        assert np.array_equal(adjoint_rotation(V), adjoint_rotation(-V))


def test_homomorphism():
    for s in range(1000):
        V, W = haar_random(2 * s), haar_random(2 * s + 1)
        err = np.linalg.norm(adjoint_rotation(V @ W) - adjoint_rotation(V) @ adjoint_rotation(W))
        assert err <= 1e-12


def test_lift_examples():
    V = lift_rotation(np.eye(3))
    np.testing.assert_array_equal(V, np.eye(2))
    target = expm_su2((0, 0, math.pi / 4))
    V = lift_rotation(adjoint_rotation(target))
    assert min(np.linalg.norm(V - target), np.linalg.norm(V + target)) <= 1e-15
    with pytest.raises(NotARotation):
        lift_rotation(np.diag([1.0, 1.0, -1.0]))


@pytest.mark.parametrize("R", [np.eye(2), np.ones((3, 3)), 2 * np.eye(3), np.full((3, 3), np.nan)])
def test_lift_rejects(R):
    with pytest.raises(NotARotation):
        lift_rotation(R)


def test_lift_round_trip():
    for s in range(1000):
        V = haar_random(s)
        R = adjoint_rotation(V)
        L = lift_rotation(R)
        assert np.linalg.norm(adjoint_rotation(L) - R) <= 1e-10
        assert min(np.linalg.norm(L - V), np.linalg.norm(L + V)) <= 1e-12


@pytest.mark.parametrize("angle", [0.0, math.pi / 2, math.pi, 3 * math.pi / 2, 2 * math.pi - 1e-9])
@pytest.mark.parametrize("axis", np.eye(3))
def test_lift_near_branches(angle, axis):
    # half-turns and near-identity rotations exercise every extraction branch
    R = adjoint_rotation(expm_su2(-0.5 * angle * axis))
    assert np.linalg.norm(adjoint_rotation(lift_rotation(R)) - R) <= 1e-12


def test_lift_sign_tie_break():
    for s in range(50):
        q = lift_rotation(adjoint_rotation(haar_random(s)))
        assert q[0, 0].real > 0 or (q[0, 0].real == 0 and q[0, 1].imag >= 0)


def test_nulling_examples():
    np.testing.assert_array_equal(nulling_rotation(GeneratorPair((1, 0, 0), (0, 1, 0))), np.eye(3))

    # normal e_x: azimuth 0, polar pi/2, so R = R_y(-pi/2)
    R = nulling_rotation(GeneratorPair((0, 1, 0), (0, 0, 1)))
    np.testing.assert_allclose(R, [[0, 0, -1], [0, 1, 0], [1, 0, 0]], atol=1e-16)
    np.testing.assert_allclose(R @ [0, 1, 0], [0, 1, 0], atol=1e-16)
    np.testing.assert_allclose(R @ [0, 0, 1], [-1, 0, 0], atol=1e-16)

    with pytest.raises(DependentGenerators):
        nulling_rotation(GeneratorPair((2, 0, 0), (4, 0, 0)))


@pytest.mark.parametrize(
    "alpha, beta",
    [((0, 0, 0), (1, 0, 0)), ((1, 1, 1), (-2, -2, -2)), ((1, 0, 0), (1, 1e-12, 0))],
)
def test_dependent_generators(alpha, beta):
    with pytest.raises(DependentGenerators):
        canonicalize(GeneratorPair(alpha, beta))


def test_nulling_maps_normal_to_ez(rng):
    for _ in range(500):
        a, b = random_pair_vectors(rng)
        R = nulling_rotation(GeneratorPair(a, b))
        n = np.cross(a, b)
        np.testing.assert_allclose(R @ (n / np.linalg.norm(n)), [0, 0, 1], atol=1e-14)
        assert abs((R @ a)[2]) <= 1e-12 * np.linalg.norm(a)
        assert abs((R @ b)[2]) <= 1e-12 * np.linalg.norm(b)


def test_nulling_is_two_givens(rng):
    a, b = random_pair_vectors(rng)
    n = np.cross(a, b)
    n /= np.linalg.norm(n)
    first = givens_z(-math.atan2(n[1], n[0]))
    assert abs((first @ n)[1]) < 1e-15
    second = givens_y(-math.atan2(math.hypot(n[0], n[1]), n[2]))
    np.testing.assert_allclose(nulling_rotation(GeneratorPair(a, b)), second @ first, atol=1e-15)


def test_canonicalize_examples():
    f = canonicalize(GeneratorPair((1, 0, 0), (0, 1, 0)))
    assert min(np.linalg.norm(f.V - np.eye(2)), np.linalg.norm(f.V + np.eye(2))) == 0
    np.testing.assert_array_equal(f.mix, np.eye(2))

    f = canonicalize(GeneratorPair((0, 1, 0), (0, 0, 1)))
    np.testing.assert_allclose(f.mix, [[0, -1], [1, 0]], atol=1e-16)

    f = canonicalize(GeneratorPair((1, 0, 1), (0, 1, 0)))
    assert abs(f.alpha_c[2]) <= 1e-12 and abs(f.beta_c[2]) <= 1e-12
    assert abs(abs(np.linalg.det(f.mix)) - math.sqrt(2)) <= 1e-10


def test_canonicalize_properties(rng):
    for _ in range(1000):
        a, b = random_pair_vectors(rng)
        f = canonicalize(GeneratorPair(a, b))
        assert abs(f.alpha_c[2]) <= 1e-12 * np.linalg.norm(a)
        assert abs(f.beta_c[2]) <= 1e-12 * np.linalg.norm(b)
        np.testing.assert_array_equal(f.mix[:, 0], f.alpha_c[:2])
        np.testing.assert_array_equal(f.mix[:, 1], f.beta_c[:2])
        assert abs(abs(np.linalg.det(f.mix)) - np.linalg.norm(np.cross(a, b))) <= 1e-10
        # matrix picture agrees with vector picture
        Vd = f.V.conj().T
        np.testing.assert_allclose(matrix_to_vec(f.V @ vec_to_matrix(a) @ Vd), f.alpha_c, atol=1e-10)
        np.testing.assert_allclose(matrix_to_vec(f.V @ vec_to_matrix(b) @ Vd), f.beta_c, atol=1e-10)
        np.testing.assert_allclose(adjoint_rotation(f.V), f.R, atol=1e-12)


def test_canonicalize_conjugator_is_the_lift(rng):
    for _ in range(200):
        f = canonicalize(GeneratorPair(*random_pair_vectors(rng)))
        np.testing.assert_allclose(f.V, lift_rotation(f.R), atol=1e-12)


def test_canonicalize_pole_normals():
    for alpha, beta in [((1, 0, 0), (0, 1, 0)), ((0, 1, 0), (1, 0, 0)), ((-0.0, 1, 0), (1, -0.0, 0))]:
        f = canonicalize(GeneratorPair(alpha, beta))
        assert np.allclose(f.alpha_c[2], 0) and np.allclose(f.beta_c[2], 0)


def test_generator_pair_from_matrices():
    pair = GeneratorPair.from_matrices(1j * SX, 1j * (SY + SZ))
    np.testing.assert_array_equal(pair.alpha, [1, 0, 0])
    np.testing.assert_array_equal(pair.beta, [0, 1, 1])


def test_generator_pair_immutable():
    pair = GeneratorPair((1, 0, 0), (0, 1, 0))
    with pytest.raises(ValueError):
        pair.alpha[0] = 5.0
