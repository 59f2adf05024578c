"""Conjugate a generator pair into the span of i sigma_x and i sigma_y.

Conjugation U -> V U V^dagger acts on su(2) = R^3 as the rotation
``adjoint_rotation(V)``. For two independent generators it is enough to
rotate their common normal onto e_z; both then have zero z-component. The
rotation is built from two Givens rotations and lifted back to SU(2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import (
    ALGEBRA_TOL,
    dagger,
    expm_su2,
    from_quaternion,
    matrix_to_vec,
    to_quaternion,
    vec_to_matrix,
)
from .errors import DependentGenerators, NotARotation

__all__ = [
    "INDEPENDENCE_TOL",
    "ROTATION_TOL",
    "GeneratorPair",
    "CanonicalFrame",
    "adjoint_rotation",
    "lift_rotation",
    "givens_z",
    "givens_y",
    "nulling_rotation",
    "canonicalize",
]

INDEPENDENCE_TOL = 1e-10
ROTATION_TOL = 1e-8

_BASIS = [vec_to_matrix(e) for e in np.eye(3)]


@dataclass(frozen=True)
class GeneratorPair:
    """Coordinates ``alpha`` of A and ``beta`` of B."""

    alpha: np.ndarray
    beta: np.ndarray

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = np.array(getattr(self, name), dtype=float).reshape(3)
            if not np.all(np.isfinite(v)):
                raise ValueError(f"{name} has non-finite components")
            v.setflags(write=False)
            object.__setattr__(self, name, v)

    @classmethod
    def from_matrices(cls, A, B, tol: float = ALGEBRA_TOL) -> "GeneratorPair":
        return cls(matrix_to_vec(A, tol), matrix_to_vec(B, tol))

    @property
    def normal(self) -> np.ndarray:
        return np.cross(self.alpha, self.beta)

    def is_independent(self, tol: float = INDEPENDENCE_TOL) -> bool:
        scale = np.linalg.norm(self.alpha) * np.linalg.norm(self.beta)
        return scale > 0 and np.linalg.norm(self.normal) > tol * scale


@dataclass(frozen=True)
class CanonicalFrame:
    """Conjugator V, its rotation R, and the generators seen from V.

    ``mix = [[a, c], [b, d]]`` holds the in-plane coordinates of the
    transformed generators, i.e. V A V^dagger = a X + b Y and
    V B V^dagger = c X + d Y with X = i sigma_x, Y = i sigma_y.
    """

    V: np.ndarray
    R: np.ndarray
    alpha_c: np.ndarray
    beta_c: np.ndarray
    mix: np.ndarray


def adjoint_rotation(V) -> np.ndarray:
    """Rotation matrix of A -> V A V^dagger on R^3."""
    V = np.asarray(V, dtype=complex)
    Vd = dagger(V)
    # conjugation of a skew-Hermitian traceless matrix stays in su(2) exactly
    cols = [matrix_to_vec(V @ E @ Vd, tol=np.inf) for E in _BASIS]
    return np.column_stack(cols)


def _rotation_residual(R) -> float:
    return max(
        float(np.linalg.norm(R @ R.T - np.eye(3))),
        abs(float(np.linalg.det(R)) - 1.0),
    )


def _normalize_sign(q):
    # make the first non-negligible quaternion component positive
    for c in q:
        if abs(c) > 1e-12:
            return q if c > 0 else tuple(-x for x in q)
    return q


def _canonical_lift(V) -> np.ndarray:
    q = np.array(_normalize_sign(to_quaternion(V)))
    return from_quaternion(*(q / np.linalg.norm(q)))


def lift_rotation(R) -> np.ndarray:
    """One of the two SU(2) elements whose adjoint rotation is ``R``.

    The quaternion is extracted from whichever of trace/diagonal is largest,
    then the sign is fixed so its first non-negligible component is positive.
    """
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3) or not np.all(np.isfinite(R)):
        raise NotARotation("expected a finite 3x3 matrix")
    res = _rotation_residual(R)
    if res > ROTATION_TOL:
        raise NotARotation(f"not in SO(3): residual {res:.3e}")

    # (w, x, y, z): rotation quaternion in the usual right-handed sense
    tr = R[0, 0] + R[1, 1] + R[2, 2]
    k = int(np.argmax([tr, R[0, 0], R[1, 1], R[2, 2]]))
    if k == 0:
        w = 0.5 * math.sqrt(max(0.0, 1.0 + tr))
        x = (R[2, 1] - R[1, 2]) / (4 * w)
        y = (R[0, 2] - R[2, 0]) / (4 * w)
        z = (R[1, 0] - R[0, 1]) / (4 * w)
    elif k == 1:
        x = 0.5 * math.sqrt(max(0.0, 1.0 + R[0, 0] - R[1, 1] - R[2, 2]))
        w = (R[2, 1] - R[1, 2]) / (4 * x)
        y = (R[0, 1] + R[1, 0]) / (4 * x)
        z = (R[0, 2] + R[2, 0]) / (4 * x)
    elif k == 2:
        y = 0.5 * math.sqrt(max(0.0, 1.0 - R[0, 0] + R[1, 1] - R[2, 2]))
        w = (R[0, 2] - R[2, 0]) / (4 * y)
        x = (R[0, 1] + R[1, 0]) / (4 * y)
        z = (R[1, 2] + R[2, 1]) / (4 * y)
    else:
        z = 0.5 * math.sqrt(max(0.0, 1.0 - R[0, 0] - R[1, 1] + R[2, 2]))
        w = (R[1, 0] - R[0, 1]) / (4 * z)
        x = (R[0, 2] + R[2, 0]) / (4 * z)
        y = (R[1, 2] + R[2, 1]) / (4 * z)

    # expm_su2(t n) rotates by -2t about n, so V carries the conjugate quaternion
    q = np.array(_normalize_sign((w, -x, -y, -z)))
    return from_quaternion(*(q / np.linalg.norm(q)))


def givens_z(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def givens_y(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def _check_pair(pair: GeneratorPair):
    if not pair.is_independent():
        raise DependentGenerators(
            "generators are linearly dependent: |alpha x beta| <= "
            f"{INDEPENDENCE_TOL:.0e} |alpha| |beta|"
        )


def _nulling_angles(pair: GeneratorPair) -> tuple[float, float]:
    n = pair.normal
    n = n / np.linalg.norm(n)
    rho = math.hypot(n[0], n[1])
    # at the poles atan2 of signed zeros can return pi; any azimuth works there
    azimuth = math.atan2(n[1], n[0]) if rho > 0 else 0.0
    polar = math.atan2(rho, n[2])
    return azimuth, polar


def nulling_rotation(pair: GeneratorPair) -> np.ndarray:
    """Rotation taking the unit normal of (alpha, beta) onto e_z.

    Rotating about z by -azimuth clears the normal's y-component; rotating
    about y by -polar then lines it up with e_z.
    """
    _check_pair(pair)
    azimuth, polar = _nulling_angles(pair)
    return givens_y(-polar) @ givens_z(-azimuth)


def canonicalize(pair: GeneratorPair) -> CanonicalFrame:
    _check_pair(pair)
    azimuth, polar = _nulling_angles(pair)
    R = givens_y(-polar) @ givens_z(-azimuth)
    # lift each Givens factor by its half angle instead of a general lift
    V = _canonical_lift(expm_su2((0.0, polar / 2, 0.0)) @ expm_su2((0.0, 0.0, azimuth / 2)))
    alpha_c = R @ pair.alpha
    beta_c = R @ pair.beta
    mix = np.array([[alpha_c[0], beta_c[0]], [alpha_c[1], beta_c[1]]])
    return CanonicalFrame(V=V, R=R, alpha_c=alpha_c, beta_c=beta_c, mix=mix)
