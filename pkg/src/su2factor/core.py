"""Pauli algebra for SU(2) under one fixed convention.

An su(2) element is stored as a real 3-vector ``v`` and stands for

    M(v) = i (v_x sigma_x + v_y sigma_y + v_z sigma_z)

with the usual Pauli matrices. Every other module goes through the helpers
here, so this is the single place where signs are decided.

Consequences of the convention worth keeping in mind:

* ``expm_su2(v) = cos|v| I + sin|v|/|v| M(v)``.
* ``adjoint_rotation(expm_su2(t * n))`` is the rotation about ``n`` by ``-2t``.
* Any U in SU(2) reads ``U = q0 I + M(q)`` for a unit quaternion ``(q0, q)``.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import NotInAlgebra, NotUnitary

__all__ = [
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "I2",
    "ALGEBRA_TOL",
    "UNITARY_TOL",
    "vec_to_matrix",
    "matrix_to_vec",
    "check_algebra",
    "expm_su2",
    "trace_inner",
    "frobenius_distance",
    "haar_random",
    "dagger",
    "unitary_residual",
    "check_unitary",
    "to_quaternion",
    "from_quaternion",
]

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

ALGEBRA_TOL = 1e-10
UNITARY_TOL = 1e-8
# below this radius sin(r)/r switches to its two-term series
_SMALL_ANGLE = 1e-8


def vec_to_matrix(v) -> np.ndarray:
    """Return M(v) = i(v . sigma)."""
    x, y, z = (float(c) for c in v)
    return np.array([[1j * z, 1j * x + y], [1j * x - y, -1j * z]], dtype=complex)


def check_algebra(M, tol: float = ALGEBRA_TOL) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.shape != (2, 2):
        raise NotInAlgebra(f"expected a 2x2 matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NotInAlgebra("matrix has non-finite entries")
    skew = np.linalg.norm(M + M.conj().T)
    tr = abs(M[0, 0] + M[1, 1])
    if skew > tol or tr > tol:
        raise NotInAlgebra(f"not in su(2): skew residual {skew:.3e}, trace {tr:.3e}")
    return M


def matrix_to_vec(M, tol: float = ALGEBRA_TOL) -> np.ndarray:
    """Inverse of :func:`vec_to_matrix`; raises NotInAlgebra on malformed input."""
    M = check_algebra(M, tol)
    x = 0.5 * (M[0, 1] + M[1, 0]).imag
    y = 0.5 * (M[0, 1] - M[1, 0]).real
    z = 0.5 * (M[0, 0] - M[1, 1]).imag
    return np.array([x, y, z])


def expm_su2(v) -> np.ndarray:
    """Closed-form exponential of M(v)."""
    x, y, z = (float(c) for c in v)
    r = math.sqrt(x * x + y * y + z * z)
    if r < _SMALL_ANGLE:
        c = 1.0 - 0.5 * r * r
        s = 1.0 - r * r / 6.0
    else:
        c = math.cos(r)
        s = math.sin(r) / r
    return np.array(
        [[c + 1j * s * z, s * (1j * x + y)], [s * (1j * x - y), c - 1j * s * z]],
        dtype=complex,
    )


def trace_inner(A, B) -> float:
    """Trace(A B^dagger); equals 2 (v_A . v_B) on su(2)."""
    A = check_algebra(A)
    B = check_algebra(B)
    return float(np.trace(A @ B.conj().T).real)


def frobenius_distance(U, W) -> float:
    return float(np.linalg.norm(np.asarray(U) - np.asarray(W)))


def dagger(U) -> np.ndarray:
    return np.asarray(U).conj().T


def unitary_residual(U) -> float:
    """max(||U U^dagger - I||_F, |det U - 1|)."""
    U = np.asarray(U, dtype=complex)
    return max(
        float(np.linalg.norm(U @ U.conj().T - I2)),
        abs(U[0, 0] * U[1, 1] - U[0, 1] * U[1, 0] - 1.0),
    )


def check_unitary(U, tol: float = UNITARY_TOL) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise NotUnitary(f"expected a 2x2 matrix, got shape {U.shape}")
    if not np.all(np.isfinite(U)):
        raise NotUnitary("matrix has non-finite entries")
    res = unitary_residual(U)
    if res > tol:
        raise NotUnitary(f"not in SU(2): residual {res:.3e} > {tol:.0e}")
    return U


def to_quaternion(U) -> tuple[float, float, float, float]:
    """Coordinates (q0, q1, q2, q3) with U = q0 I + M(q1, q2, q3)."""
    U = np.asarray(U)
    q0 = 0.5 * (U[0, 0] + U[1, 1]).real
    q1 = 0.5 * (U[0, 1] + U[1, 0]).imag
    q2 = 0.5 * (U[0, 1] - U[1, 0]).real
    q3 = 0.5 * (U[0, 0] - U[1, 1]).imag
    return float(q0), float(q1), float(q2), float(q3)


def from_quaternion(q0, q1, q2, q3) -> np.ndarray:
    return np.array(
        [[q0 + 1j * q3, q2 + 1j * q1], [-q2 + 1j * q1, q0 - 1j * q3]], dtype=complex
    )


def haar_random(seed) -> np.ndarray:
    """Haar-distributed SU(2) element, deterministic in ``seed``.

    Normalised 4-d Gaussian vectors are uniform on S^3, which is SU(2) with
    its Haar measure.
    """
    rng = np.random.default_rng(seed)
    q = rng.normal(size=4)
    q /= np.linalg.norm(q)
    return from_quaternion(*q)
