import numpy as np
import pytest
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

finite = st.floats(-1.0, 1.0, allow_nan=False, allow_infinity=False)


def ginibre_state(raw: np.ndarray) -> np.ndarray:
    """Full-rank-ish density matrix from a real (2, n, n) array."""
    g = raw[0] + 1j * raw[1]
    rho = g @ g.conj().T + 1e-3 * np.eye(g.shape[0])
    return rho / np.trace(rho).real


def hermitian_from(raw: np.ndarray) -> np.ndarray:
    g = raw[0] + 1j * raw[1]
    return g + g.conj().T


def density_matrices(n=4):
    return arrays(np.float64, (2, n, n), elements=finite).map(ginibre_state)


def hermitian_matrices(n=4):
    return arrays(np.float64, (2, n, n), elements=finite).map(hermitian_from)


def random_unitary(rng, n=2):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
