"""Randomised property suites behind ``su2factor selftest``.

Each suite takes ``(trials, rng)`` and returns the index of the first failing
trial, or None. Output depends only on the seed.
"""
from __future__ import annotations

import math

import numpy as np

from .canonicalizer import GeneratorPair, adjoint_rotation, canonicalize, lift_rotation
from .core import expm_su2, frobenius_distance, haar_random, matrix_to_vec, trace_inner, vec_to_matrix
from .factorizer import (
    FactorSequence,
    enforce_positivity,
    factorize,
    merge_adjacent,
    solve_coefficients,
    split_for_bound,
    verify,
)

BOUNDS = (0.05, 0.1, 0.5, 1.0, 2.0)
MONOTONE_BOUNDS = (0.05, 0.1, 0.2, 0.4, 0.8)
HAAR_SAMPLES = 10_000


def random_su2(rng):
    return haar_random(int(rng.integers(2**63 - 1)))


def random_pair(rng, planar=False, min_sine=0.05):
    """Generator pair with components uniform in [-1, 1], rejecting near-dependent draws."""
    while True:
        alpha = rng.uniform(-1, 1, 3)
        beta = rng.uniform(-1, 1, 3)
        if planar:
            alpha[2] = beta[2] = 0.0
        na, nb = np.linalg.norm(alpha), np.linalg.norm(beta)
        if min(na, nb) < 0.05:
            continue
        if np.linalg.norm(np.cross(alpha, beta)) > min_sine * na * nb:
            return GeneratorPair(alpha, beta)


def taylor_expm(M, terms=25):
    out = np.eye(2, dtype=complex)
    term = np.eye(2, dtype=complex)
    for k in range(1, terms):
        term = term @ M / k
        out = out + term
    return out


def _first_failure(trials, check):
    for i in range(trials):
        if not check(i):
            return i
    return None


def suite_roundtrip(trials, rng):
    def check(_):
        v = rng.normal(size=3) * 10.0 ** rng.uniform(-6, 6)
        back = matrix_to_vec(vec_to_matrix(v))
        return np.linalg.norm(back - v) <= 1e-14 * np.linalg.norm(v)
    return _first_failure(trials, check)


def suite_expm_taylor(trials, rng):
    def check(_):
        d = rng.normal(size=3)
        v = d / np.linalg.norm(d) * rng.uniform(0, math.pi)
        return frobenius_distance(expm_su2(v), taylor_expm(vec_to_matrix(v))) <= 1e-12
    return _first_failure(trials, check)


def suite_periodicity(trials, rng):
    def check(_):
        d = rng.normal(size=3)
        r = rng.uniform(0.1, 6.0)
        v = d / np.linalg.norm(d) * r
        return frobenius_distance(expm_su2(v), expm_su2(v * (1 + 2 * math.pi / r))) <= 1e-12
    return _first_failure(trials, check)


def suite_inner_product(trials, rng):
    def check(_):
        v, w = rng.normal(size=3), rng.normal(size=3)
        return abs(trace_inner(vec_to_matrix(v), vec_to_matrix(w)) - 2 * v @ w) <= 1e-12
    return _first_failure(trials, check)


def suite_haar_moment(trials, rng):
    # moment test needs a fixed sample size to be meaningful
    traces = [abs(np.trace(random_su2(rng))) ** 2 for _ in range(HAAR_SAMPLES)]
    return None if abs(np.mean(traces) - 1.0) <= 0.05 else 0


def suite_double_cover(trials, rng):
    def check(_):
        V = random_su2(rng)
        return np.array_equal(adjoint_rotation(V), adjoint_rotation(-V))
    return _first_failure(trials, check)


def suite_homomorphism(trials, rng):
    def check(_):
        V, W = random_su2(rng), random_su2(rng)
        lhs = adjoint_rotation(V @ W)
        rhs = adjoint_rotation(V) @ adjoint_rotation(W)
        return np.linalg.norm(lhs - rhs) <= 1e-12
    return _first_failure(trials, check)


def suite_lift_roundtrip(trials, rng):
    def check(_):
        R = adjoint_rotation(random_su2(rng))
        return np.linalg.norm(adjoint_rotation(lift_rotation(R)) - R) <= 1e-10
    return _first_failure(trials, check)


def suite_nulling(trials, rng):
    def check(_):
        pair = random_pair(rng)
        f = canonicalize(pair)
        na, nb = np.linalg.norm(pair.alpha), np.linalg.norm(pair.beta)
        cross = np.linalg.norm(pair.normal)
        return (
            abs(f.alpha_c[2]) <= 1e-12 * na
            and abs(f.beta_c[2]) <= 1e-12 * nb
            and abs(abs(np.linalg.det(f.mix)) - cross) <= 1e-10
        )
    return _first_failure(trials, check)


def suite_conjugation(trials, rng):
    def check(_):
        pair = random_pair(rng)
        f = canonicalize(pair)
        Vd = f.V.conj().T
        a = matrix_to_vec(f.V @ vec_to_matrix(pair.alpha) @ Vd)
        b = matrix_to_vec(f.V @ vec_to_matrix(pair.beta) @ Vd)
        return np.linalg.norm(a - f.alpha_c) <= 1e-10 and np.linalg.norm(b - f.beta_c) <= 1e-10
    return _first_failure(trials, check)


def _contract_ok(S, pair, C):
    seq, report = factorize(S, pair, C)
    return (
        verify(S, pair, seq) <= 1e-9
        and all(f.a >= 1e-12 and abs(f.b) <= C for f in seq.factors)
    ), report


def suite_end_to_end(trials, rng):
    def check(i):
        ok, _ = _contract_ok(random_su2(rng), random_pair(rng), BOUNDS[i % len(BOUNDS)])
        return ok
    return _first_failure(trials, check)


def suite_canonical_pairs(trials, rng):
    def check(i):
        pair = random_pair(rng, planar=True)
        ok, report = _contract_ok(random_su2(rng), pair, BOUNDS[i % len(BOUNDS)])
        V = report.conjugator
        identity = min(np.linalg.norm(V - np.eye(2)), np.linalg.norm(V + np.eye(2))) <= 1e-12
        # a planar pair with normal along -e_z is turned over, not left alone
        return ok and (identity or pair.normal[2] < 0)
    return _first_failure(trials, check)


def suite_merge(trials, rng):
    def check(i):
        _, report = factorize(random_su2(rng), random_pair(rng), BOUNDS[i % len(BOUNDS)])
        return report.Q <= report.Q_raw and abs(report.residual - report.raw_residual) <= 1e-12
    return _first_failure(trials, check)


def suite_split_merge(trials, rng):
    def check(_):
        C = float(rng.choice(BOUNDS))
        a = rng.uniform(1e-3, 5.0)
        b = rng.uniform(-1, 1) * C * 0.999
        C_split = C / rng.integers(1, 40)
        pieces = split_for_bound(a, b, C_split)
        pair = GeneratorPair((1, 0, 0), (0, 1, 0))
        merged = merge_adjacent(FactorSequence(tuple(pieces), pair, C))
        if merged.Q != 1:
            return False
        f = merged.factors[0]
        return abs(f.a - a) <= 1e-14 * max(1.0, a) and abs(f.b - b) <= 1e-14 * max(1.0, abs(b))
    return _first_failure(trials, check)


def suite_bound_monotone(trials, rng):
    def check(_):
        S, pair = random_su2(rng), random_pair(rng)
        qs = [factorize(S, pair, C)[1].Q for C in MONOTONE_BOUNDS]
        return all(x >= y for x, y in zip(qs, qs[1:]))
    return _first_failure(trials, check)


def suite_positivity(trials, rng):
    def check(_):
        phi = rng.uniform(0, 2 * math.pi)
        r = rng.uniform(1e-6, 2 * math.pi - 1e-6)
        w = np.array([r * math.cos(phi), r * math.sin(phi), 0.0])
        mix = rng.uniform(-1, 1, (2, 2))
        if abs(np.linalg.det(mix)) < 0.05:
            return True
        a_raw, b_raw = solve_coefficients(w, mix)
        if abs(a_raw) <= 1e-6 * math.hypot(a_raw, b_raw):
            return True
        w2, a, b = enforce_positivity(w, a_raw, b_raw)
        return a > 0 and frobenius_distance(expm_su2(w2), expm_su2(w)) <= 1e-12
    return _first_failure(trials, check)


SUITES = {
    "core.roundtrip": suite_roundtrip,
    "core.expm_taylor": suite_expm_taylor,
    "core.periodicity": suite_periodicity,
    "core.inner_product": suite_inner_product,
    "core.haar_moment": suite_haar_moment,
    "canonicalizer.double_cover": suite_double_cover,
    "canonicalizer.homomorphism": suite_homomorphism,
    "canonicalizer.lift_roundtrip": suite_lift_roundtrip,
    "canonicalizer.nulling": suite_nulling,
    "canonicalizer.conjugation": suite_conjugation,
    "factorizer.end_to_end": suite_end_to_end,
    "factorizer.canonical_pairs": suite_canonical_pairs,
    "factorizer.merge": suite_merge,
    "factorizer.split_merge": suite_split_merge,
    "factorizer.bound_monotone": suite_bound_monotone,
    "factorizer.positivity": suite_positivity,
}


def run(trials: int, seed: int, out) -> bool:
    """Run every suite, writing one line per suite to ``out``; True iff all pass."""
    ok = True
    for k, (name, suite) in enumerate(SUITES.items()):
        rng = np.random.default_rng([seed, k])
        total = 1 if name == "core.haar_moment" else trials
        try:
            bad = suite(trials, rng)
        except Exception as exc:  # a raising trial is a failing trial
            out.write(f"{name}: FAIL raised {type(exc).__name__}: {exc} (seed={seed})\n")
            ok = False
            continue
        if bad is None:
            out.write(f"{name}: {total}/{total} passed\n")
        else:
            ok = False
            out.write(f"{name}: FAIL at trial index {bad} (seed={seed})\n")
    return ok
