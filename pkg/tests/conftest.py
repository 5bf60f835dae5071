import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)

ACCEPTANCE_LINES = []


def closed_form_tensor(alpha0):
    """Two-qubit pull-back tensor written out entry by entry from its closed form."""
    c, s = np.cos(2 * alpha0), np.sin(2 * alpha0)
    s2 = s * s
    return np.array([
        [1, 1j * c, 0, s, 0, 0],
        [-1j * c, 1, 0, 0, -s, 0],
        [0, 0, s2, 0, 0, s2],
        [s, 0, 0, 1, 1j * c, 0],
        [0, -s, 0, -1j * c, 1, 0],
        [0, 0, s2, 0, 0, s2],
    ], dtype=complex)


def reduced_by_reshape(rho, dims, keep):
    """Partial trace via tensor reshape; independent of the library's loop."""
    d1, d2 = dims
    r = np.asarray(rho).reshape(d1, d2, d1, d2)
    return np.einsum("ikjk->ij", r) if keep == 1 else np.einsum("kikj->ij", r)


def random_density(dim, rng, rank=None):
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho)


@pytest.fixture
def rng():
    return np.random.default_rng(20260407)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
