"""
Wavefunctions on an integer momentum ladder k = m + beta and the observables
read off them.
"""
from dataclasses import dataclass
from math import floor

import numpy as np

from qratchet.model.params import Grid


@dataclass
class QuantumState:
    """
    Amplitudes c_m for m = -m_max..m_max (ascending) on the ladder with
    quasi-momentum beta in [0, 1).
    """

    amplitudes: np.ndarray
    beta: float
    grid: Grid

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.shape != (self.grid.N,):
            raise ValueError(
                f"Expected {self.grid.N} amplitudes for m_max={self.grid.m_max},"
                f" got shape {self.amplitudes.shape}"
            )

    @property
    def k(self):
        return self.grid.m + self.beta

    def copy(self, amplitudes=None):
        if amplitudes is None:
            amplitudes = self.amplitudes.copy()
        return QuantumState(amplitudes, self.beta, self.grid)


def _check_beta(beta):
    if not 0 <= beta < 1:
        raise ValueError(f"beta must lie in [0, 1), got {beta}")


def init_uniform(grid, beta=0.0):
    """
    Spatially homogeneous state with zero momentum on the beta ladder,
    i.e. c_m = 1 for m = 0 and 0 otherwise.

    :param grid: Grid
    :param beta: quasi-momentum in [0, 1)
    :raises ValueError: if beta is outside [0, 1)
    """
    _check_beta(beta)
    c = np.zeros(grid.N, dtype=complex)
    c[grid.m_max] = 1.0
    return QuantumState(c, float(beta), grid)


def init_state(grid, offset):
    """
    Plane wave with momentum k = offset for any real offset.

    The offset is split into the ladder quasi-momentum beta = offset mod 1
    and the integer starting index m0 = floor(offset), so negative offsets
    from a quasi-momentum spread land on the right ladder.
    """
    m0 = floor(offset)
    beta = offset - m0
    # offset - floor(offset) can round up to exactly 1.0 for tiny negatives
    if beta >= 1:
        m0, beta = m0 + 1, 0.0
    if abs(m0) >= grid.m_max:
        raise ValueError(f"offset {offset} lies outside the grid m_max={grid.m_max}")
    c = np.zeros(grid.N, dtype=complex)
    c[grid.m_max + m0] = 1.0
    return QuantumState(c, float(beta), grid)


def populations(state):
    return np.abs(state.amplitudes) ** 2


def norm(state):
    return float(np.sum(populations(state)))


def current(state):
    """Ratchet current <k> = sum_m (m + beta)|c_m|^2"""
    return float(np.sum(state.k * populations(state)))


def energy(state, params):
    """Kinetic energy (hbar_eff^2/2) sum_m (m + beta)^2 |c_m|^2"""
    return float(0.5 * params.hbar_eff ** 2 * np.sum(state.k ** 2 * populations(state)))


def edge_population(state):
    """Population on the two outermost ladder sites"""
    c = state.amplitudes
    return float(abs(c[0]) ** 2 + abs(c[-1]) ** 2)


def momentum_distribution(state):
    """
    :returns: (k values, populations) arrays ordered by ascending momentum
    """
    return state.k.astype(float), populations(state)
