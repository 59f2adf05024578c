import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def pauli_matrix(v):
    """i(v . sigma) built directly from the Pauli matrices."""
    return 1j * (v[0] * SX + v[1] * SY + v[2] * SZ)


def random_pair_vectors(rng, planar=False, min_sine=0.05):
    while True:
        a = rng.uniform(-1, 1, 3)
        b = rng.uniform(-1, 1, 3)
        if planar:
            a[2] = b[2] = 0.0
        na, nb = np.linalg.norm(a), np.linalg.norm(b)
        if min(na, nb) > 0.05 and np.linalg.norm(np.cross(a, b)) > min_sine * na * nb:
            return a, b


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
