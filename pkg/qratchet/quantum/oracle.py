"""
Dense matrix version of the quantum map, used to cross-check the FFT path.

The kick matrix <m|exp(-i P f(x))|m'> is assembled from explicit quadrature
sums over the N position nodes rather than from a transform, then applied
with an ordinary matrix-vector product.
"""
import numpy as np

from qratchet.model.params import potential_shape

MAX_DENSE_N = 512


def kick_matrix(grid, params):
    """
    N x N kick operator in the momentum basis,

        K[m, m'] = (1/N) sum_j exp(-i P f(x_j)) exp(-i (m - m') x_j)

    :raises ValueError: if the grid is too large for a dense matrix
    """
    if grid.N > MAX_DENSE_N:
        raise ValueError(
            f"Dense oracle limited to N <= {MAX_DENSE_N}, got N={grid.N}"
        )
    x = grid.x
    g = np.exp(-1j * params.P * potential_shape(x, params.alpha))
    waves = np.exp(-1j * np.outer(grid.m, x))
    return (waves * g) @ waves.conj().T / grid.N


def free_matrix(grid, params, beta):
    k = grid.m + beta
    return np.diag(np.exp(-0.5j * params.hbar_eff * k ** 2))


def dense_oracle_step(state, params):
    """
    One period of the map by explicit matrix products; must agree with
    qratchet.quantum.propagate.step.

    :raises ValueError: if the grid is too large for a dense matrix
    """
    grid = state.grid
    U = free_matrix(grid, params, state.beta) @ kick_matrix(grid, params)
    return state.copy(U @ state.amplitudes)
