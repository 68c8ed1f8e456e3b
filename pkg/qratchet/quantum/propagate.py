"""
Split-operator propagation of the kicked ratchet quantum map

    U = exp(-i hbar_eff k^2 / 2) exp(-i P f(x))

with f(x) = sin(x) + alpha*sin(2x). The kick is diagonal on the position
nodes, the free flight is diagonal on the momentum ladder and the two are
connected by the unitary N-point discrete Fourier transform. The current is
sampled after each complete step (kick, then free flight).
"""
from dataclasses import dataclass, field
from math import ceil
from typing import List, NamedTuple

import numpy as np
from scipy import fft

from qratchet.errors import AliasingError
from qratchet.model.params import Grid, potential_shape
from qratchet.quantum.state import (
    current,
    energy,
    init_uniform,
    norm,
)

ALIASING_THRESHOLD = 1e-8


class SeriesEntry(NamedTuple):
    l: int
    mean_k: float
    norm: float
    energy: float


@dataclass
class CurrentSeries:
    entries: List[SeriesEntry] = field(default_factory=list)

    @property
    def kicks(self):
        return np.array([e.l for e in self.entries])

    @property
    def mean_k(self):
        return np.array([e.mean_k for e in self.entries])

    @property
    def final(self):
        return self.entries[-1]

    def at(self, l):
        for e in self.entries:
            if e.l == l:
                return e
        raise KeyError(f"kick {l} was not recorded")


def default_m_max(P, l_max):
    """Ladder half-width that comfortably holds l_max kicks of strength P"""
    return max(512, ceil(8 * P * l_max / 10))


def to_position(amplitudes):
    """Ascending momentum amplitudes -> values on the N position nodes"""
    return fft.ifft(fft.ifftshift(amplitudes), norm="ortho")


def to_momentum(values):
    """Values on the N position nodes -> ascending momentum amplitudes"""
    return fft.fftshift(fft.fft(values, norm="ortho"))


def kick_factors(grid, params):
    return np.exp(-1j * params.P * potential_shape(grid.x, params.alpha))


def free_factors(grid, params, beta):
    k = grid.m + beta
    return np.exp(-0.5j * params.hbar_eff * k ** 2)


def apply_kick(state, params):
    """
    Imprint the kick phase exp(-i P f(x)) on the position nodes.

    :param state: normalized QuantumState
    :param params: ModelParams
    :returns: new QuantumState
    """
    psi = to_position(state.amplitudes) * kick_factors(state.grid, params)
    return state.copy(to_momentum(psi))


def apply_free(state, params):
    """
    Free flight over one period, c_m -> c_m exp(-i hbar_eff (m+beta)^2 / 2).

    :returns: new QuantumState
    """
    return state.copy(
        state.amplitudes * free_factors(state.grid, params, state.beta)
    )


def step(state, params):
    """One full period of the quantum map: kick, then free flight"""
    return apply_free(apply_kick(state, params), params)


def _check_edges(c, kick, threshold):
    edge = abs(c[0]) ** 2 + abs(c[-1]) ** 2
    if edge > threshold:
        raise AliasingError(kick, edge, threshold)


def _record(series, l, state, params):
    series.entries.append(
        SeriesEntry(l, current(state), norm(state), energy(state, params))
    )


def evolve_state(
    params,
    grid=None,
    beta=0.0,
    l_max=200,
    record_every=1,
    aliasing_threshold=ALIASING_THRESHOLD,
    initial=None,
):
    """
    Iterate the quantum map from the homogeneous zero-momentum state and
    record the current, norm and energy.

    :param params: ModelParams
    :param grid: Grid, defaults to Grid(default_m_max(P, l_max))
    :param beta: quasi-momentum of the ladder in [0, 1)
    :param l_max: number of kicks, >= 1
    :param record_every: record every this many kicks (l=0 and l_max are
        always recorded)
    :param aliasing_threshold: maximum edge population tolerated
    :param initial: optional starting QuantumState overriding grid and beta
    :raises ValueError: on invalid kick counts
    :raises AliasingError: naming the kick at which the edge population
        exceeded the threshold
    :returns: (CurrentSeries, final QuantumState)
    """
    if int(l_max) != l_max or l_max < 1:
        raise ValueError(f"l_max must be a positive integer, got {l_max}")
    if int(record_every) != record_every or record_every < 1:
        raise ValueError(
            f"record_every must be a positive integer, got {record_every}"
        )

    if initial is None:
        if grid is None:
            grid = Grid(default_m_max(params.P, l_max))
        state = init_uniform(grid, beta)
    else:
        state = initial.copy()
    grid = state.grid

    kick = kick_factors(grid, params)
    free = free_factors(grid, params, state.beta)

    series = CurrentSeries()
    _record(series, 0, state, params)
    c = state.amplitudes
    for l in range(1, l_max + 1):
        c = to_momentum(to_position(c) * kick) * free
        _check_edges(c, l, aliasing_threshold)
        if l % record_every == 0 or l == l_max:
            state.amplitudes = c
            _record(series, l, state, params)

    state.amplitudes = c
    return series, state


def evolve(params, grid=None, beta=0.0, l_max=200, record_every=1, **kwargs):
    """See evolve_state; returns only the CurrentSeries"""
    series, _ = evolve_state(
        params, grid, beta, l_max, record_every=record_every, **kwargs
    )
    return series
