import numpy as np
import pytest

from qratchet.model.params import Grid, ModelParams
from qratchet.quantum.state import QuantumState

ALPHA = 0.3


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def small_grid():
    return Grid(64)


@pytest.fixture
def params():
    return ModelParams.from_phase(3.0, ALPHA, 1.5 * np.pi)


def random_state(rng, grid, beta=0.0):
    """Normalized random state supported well inside the ladder"""
    c = np.zeros(grid.N, dtype=complex)
    inner = slice(grid.m_max - 8, grid.m_max + 9)
    c[inner] = rng.normal(size=17) + 1j * rng.normal(size=17)
    c /= np.linalg.norm(c)
    return QuantumState(c, beta, grid)
