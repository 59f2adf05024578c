"""Factor S in SU(2) as a product of exp(a_k A + b_k B) with a_k > 0, |b_k| <= C.

Pipeline:

1. conjugate the generators into the xy-plane (:func:`canonicalize`);
2. write the conjugated target as an X'Y'X' Euler product, where X', Y' are
   the x/y axes turned by an in-plane angle ``psi`` chosen so that no
   factor points purely along B;
3. read each Euler factor off in (A, B) coordinates;
4. use 2*pi periodicity to make the A-coefficient positive;
5. cut factors into equal commuting pieces until |b| <= C;
6. merge adjacent proportional factors where the bound allows.

Products are ordered left to right: the sequence ``[F_1, ..., F_Q]`` stands
for ``F_1 @ F_2 @ ... @ F_Q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .canonicalizer import CanonicalFrame, GeneratorPair, canonicalize
from .core import I2, UNITARY_TOL, check_unitary, dagger, expm_su2, frobenius_distance, to_quaternion
from .errors import (
    DegenerateDirection,
    InvalidBound,
    NoViableFrame,
    ResidualTooLarge,
    SingularMixing,
)

__all__ = [
    "Factor",
    "FactorSequence",
    "DecompositionReport",
    "euler_inplane",
    "solve_coefficients",
    "enforce_positivity",
    "split_for_bound",
    "choose_frame_angle",
    "merge_adjacent",
    "factorize",
    "product",
    "verify",
]

TWO_PI = 2.0 * math.pi
FRAME_GRID = 64
FRAME_MARGIN = 1e-6
DEGENERATE_TOL = 1e-9
SINGULAR_TOL = 1e-10
PROPORTIONAL_TOL = 1e-12
# Euler angles this close to 0 (mod 2 pi) are identity factors and dropped
_ANGLE_EPS = 1e-13


@dataclass(frozen=True)
class Factor:
    a: float
    b: float


@dataclass(frozen=True)
class FactorSequence:
    factors: tuple
    pair: GeneratorPair
    bound_C: float
    residual: float = float("nan")
    target: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.factors)

    @property
    def Q(self) -> int:
        return len(self.factors)

    def satisfies_bounds(self) -> bool:
        return all(f.a > 0 and abs(f.b) <= self.bound_C for f in self.factors)


@dataclass(frozen=True)
class DecompositionReport:
    Q_raw: int
    Q: int
    residual: float
    frame_angle: float
    conjugator: np.ndarray
    raw_residual: float = float("nan")


def product(pair: GeneratorPair, factors) -> np.ndarray:
    U = I2.copy()
    for f in factors:
        U = U @ expm_su2(f.a * pair.alpha + f.b * pair.beta)
    return U


def verify(S, pair: GeneratorPair, seq) -> float:
    """Frobenius distance between ``S`` and the product the sequence encodes."""
    factors = seq.factors if isinstance(seq, FactorSequence) else seq
    return frobenius_distance(S, product(pair, factors))


def _euler_angles(q, psi):
    """Angles (t1, t2, t3) with W = X'(t1) Y'(t2) X'(t3); see :func:`euler_inplane`."""
    q0, q1, q2, q3 = q
    c, s = math.cos(psi), math.sin(psi)
    # turn the frame so X' becomes the x axis
    q1, q2 = c * q1 + s * q2, -s * q1 + c * q2
    # X(t1) Y(t2) X(t3) = cos t2 e^{i(t1+t3)} on (q0, q1), sin t2 e^{-i(t1-t3)} on (q2, q3)
    r1 = math.hypot(q0, q1)
    r2 = math.hypot(q2, q3)
    t2 = math.atan2(r2, r1)
    if r2 <= 1e-15:
        total = math.atan2(q1, q0)
        diff = total
    elif r1 <= 1e-15:
        diff = -math.atan2(q3, q2)
        total = diff
    else:
        total = math.atan2(q1, q0)
        diff = -math.atan2(q3, q2)
    return 0.5 * (total + diff), t2, 0.5 * (total - diff)


def _inplane_terms(q, psi):
    """Nonzero Euler angles in (0, 2 pi) with their axis (0 for X', 1 for Y')."""
    out = []
    for axis, t in zip((0, 1, 0), _euler_angles(q, psi)):
        t = math.fmod(t, TWO_PI)
        if t < 0:
            t += TWO_PI
        if t <= _ANGLE_EPS or t >= TWO_PI - _ANGLE_EPS:
            continue
        out.append((t, axis))
    return out


def _axis(psi, axis):
    c, s = math.cos(psi), math.sin(psi)
    return (c, s) if axis == 0 else (-s, c)


def euler_inplane(S_c, psi: float) -> list:
    """X'Y'X' Euler factors of ``S_c`` in the xy-plane frame turned by ``psi``.

    Returns up to three in-plane vectors ``w_i`` (identity factors omitted),
    each a positive multiple of X' = (cos psi, sin psi, 0) or
    Y' = (-sin psi, cos psi, 0) with length in (0, 2 pi), such that
    ``expm_su2(w_1) @ expm_su2(w_2) @ expm_su2(w_3) == S_c``.
    """
    out = []
    for t, axis in _inplane_terms(to_quaternion(S_c), psi):
        ux, uy = _axis(psi, axis)
        out.append(np.array([t * ux, t * uy, 0.0]))
    return out


def _check_mix(mix):
    mix = np.asarray(mix, dtype=float)
    det = mix[0, 0] * mix[1, 1] - mix[0, 1] * mix[1, 0]
    scale = np.linalg.norm(mix[:, 0]) * np.linalg.norm(mix[:, 1])
    if not abs(det) > SINGULAR_TOL * scale:
        raise SingularMixing(f"mixing matrix is singular (det = {det:.3e})")
    return mix, det


def solve_coefficients(w, mix) -> tuple[float, float]:
    """Solve ``mix @ (a, b) = (w_x, w_y)`` for the generator coefficients."""
    mix, det = _check_mix(mix)
    u, v = float(w[0]), float(w[1])
    a = (mix[1, 1] * u - mix[0, 1] * v) / det
    b = (mix[0, 0] * v - mix[1, 0] * u) / det
    return a, b


def enforce_positivity(w, a_raw: float, b_raw: float):
    """Rescale a factor so its A-coefficient is positive, keeping its exponential.

    exp(M(w)) only depends on w modulo 2 pi along its direction, so a factor
    with a_raw < 0 is replaced by lam * w with lam = 1 - 2 pi / |w|.
    """
    w = np.asarray(w, dtype=float)
    if abs(a_raw) <= DEGENERATE_TOL * math.hypot(a_raw, b_raw):
        raise DegenerateDirection(
            f"factor direction is (numerically) pure B: a_raw = {a_raw:.3e}, b_raw = {b_raw:.3e}"
        )
    if a_raw > 0:
        return w, a_raw, b_raw
    lam = 1.0 - TWO_PI / float(np.linalg.norm(w))
    return lam * w, lam * a_raw, lam * b_raw


def split_for_bound(a: float, b: float, C: float) -> list:
    """Split exp(aA + bB) into m equal pieces with |b/m| <= C."""
    if not C > 0:
        raise InvalidBound(f"bound must be positive, got {C}")
    m = max(1, math.ceil(abs(b) / C))
    while abs(b / m) > C:
        m += 1
    return [Factor(a / m, b / m)] * m


def _margin(terms, psi, inv_mix):
    worst = math.inf
    for _, axis in terms:
        ux, uy = _axis(psi, axis)
        a = inv_mix[0, 0] * ux + inv_mix[0, 1] * uy
        b = inv_mix[1, 0] * ux + inv_mix[1, 1] * uy
        worst = min(worst, abs(a) / math.hypot(a, b))
    return worst


def choose_frame_angle(S_c, mix, grid: int = FRAME_GRID) -> float:
    """In-plane frame angle in [0, pi) maximising the worst A-coefficient margin.

    Scans ``grid`` equally spaced angles and picks the one whose Euler factors
    have the largest minimum of |a_raw| / |(a_raw, b_raw)|; ties go to the
    smaller angle.
    """
    mix, _ = _check_mix(mix)
    inv_mix = np.linalg.inv(mix)
    q = to_quaternion(S_c)
    best_psi, best = 0.0, -1.0
    for j in range(grid):
        psi = math.pi * j / grid
        m = _margin(_inplane_terms(q, psi), psi, inv_mix)
        if m > best:
            best_psi, best = psi, m
    if best <= FRAME_MARGIN:
        raise NoViableFrame(f"no frame angle on a {grid}-point grid avoids pure-B factors")
    return best_psi


def _proportional(f: Factor, g: Factor) -> bool:
    cross = abs(f.a * g.b - g.a * f.b)
    scale = math.hypot(f.a, f.b) * math.hypot(g.a, g.b)
    return cross <= PROPORTIONAL_TOL * scale and f.a * g.a + f.b * g.b > 0


def _merge_pass(factors, C):
    out = []
    for f in factors:
        if out and _proportional(out[-1], f):
            merged = Factor(out[-1].a + f.a, out[-1].b + f.b)
            if merged.a > 0 and abs(merged.b) <= C:
                out[-1] = merged
                continue
        out.append(f)
    return out


def merge_adjacent(seq: FactorSequence) -> FactorSequence:
    """Fuse neighbouring factors whose exponents are positive multiples of each other.

    Proportional exponents commute, so exp(X) exp(Y) = exp(X + Y); a fusion
    is only taken if the result still satisfies a > 0 and |b| <= C.
    """
    factors = list(seq.factors)
    while True:
        merged = _merge_pass(factors, seq.bound_C)
        if len(merged) == len(factors):
            break
        factors = merged
    residual = seq.residual
    if seq.target is not None:
        residual = verify(seq.target, seq.pair, factors)
    return replace(seq, factors=tuple(factors), residual=residual)


def factorize(S, pair: GeneratorPair, C: float, tol: float = 1e-9):
    """Factor ``S`` over the generator pair with A-coefficients > 0 and |B-coefficients| <= C.

    Returns ``(FactorSequence, DecompositionReport)``. Raises
    DependentGenerators, InvalidBound, NotUnitary, NoViableFrame, and
    ResidualTooLarge when the reassembled product misses ``S`` by more than
    ``tol``.
    """
    try:
        C = float(C)
    except (TypeError, ValueError):
        raise InvalidBound(f"bound must be a number, got {C!r}") from None
    if not (math.isfinite(C) and C > 0):
        raise InvalidBound(f"bound must be a positive finite number, got {C!r}")
    if not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol!r}")
    S = check_unitary(S, UNITARY_TOL)
    frame: CanonicalFrame = canonicalize(pair)
    V = frame.V
    S_c = V @ S @ dagger(V)
    psi = choose_frame_angle(S_c, frame.mix)

    factors = []
    for w in euler_inplane(S_c, psi):
        a_raw, b_raw = solve_coefficients(w, frame.mix)
        _, a, b = enforce_positivity(w, a_raw, b_raw)
        factors.extend(split_for_bound(a, b, C))

    raw = FactorSequence(
        factors=tuple(factors),
        pair=pair,
        bound_C=float(C),
        residual=verify(S, pair, factors),
        target=S,
    )
    seq = merge_adjacent(raw)
    report = DecompositionReport(
        Q_raw=raw.Q,
        Q=seq.Q,
        residual=seq.residual,
        frame_angle=psi,
        conjugator=V,
        raw_residual=raw.residual,
    )
    if not seq.residual <= tol:
        raise ResidualTooLarge(seq.residual, tol, seq, report)
    return seq, report
