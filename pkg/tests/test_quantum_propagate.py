import numpy as np
import pytest
from scipy.integrate import quad

from qratchet.errors import AliasingError, GuardError
from qratchet.model.params import Grid, ModelParams, potential_shape
from qratchet.quantum.oracle import MAX_DENSE_N, dense_oracle_step, kick_matrix
from qratchet.quantum.propagate import (
    apply_kick,
    default_m_max,
    evolve,
    evolve_state,
    step,
)
from qratchet.quantum.state import (
    current,
    edge_population,
    init_state,
    init_uniform,
    momentum_distribution,
    norm,
    populations,
)
from tests.conftest import ALPHA, random_state


@pytest.mark.parametrize("beta", [0.0, 0.25, 0.7])
def test_fft_step_matches_dense_oracle(rng, small_grid, params, beta):
    """
    Test qratchet.quantum.propagate.step against the dense matrix map
    """
    state = random_state(rng, small_grid, beta)
    fast = step(state, params)
    dense = dense_oracle_step(state, params)
    assert np.allclose(fast.amplitudes, dense.amplitudes, atol=1e-10)


def test_fft_step_matches_dense_oracle_random_draws(rng):
    """
    100 random states under each of 20 random parameter draws on the
    smallest ladder
    """
    grid = Grid(8)
    for _ in range(20):
        P = rng.uniform(0.0, 8.0)
        alpha = rng.uniform(0.0, 0.6)
        hbar_eff = rng.uniform(0.05, 4 * np.pi)
        p = ModelParams.from_phase(P, alpha, hbar_eff)
        for beta in rng.uniform(0.0, 1.0, size=100):
            state = random_state(rng, grid, beta)
            fast = step(state, p)
            dense = dense_oracle_step(state, p)
            assert np.max(np.abs(fast.amplitudes - dense.amplitudes)) < 1e-10


def test_kick_matrix_unitary(small_grid, params):
    U = kick_matrix(small_grid, params)
    assert np.allclose(U @ U.conj().T, np.eye(small_grid.N), atol=1e-10)
    with pytest.raises(ValueError):
        kick_matrix(Grid(MAX_DENSE_N), params)


def test_norm_conserved():
    p = ModelParams.from_phase(3.0, ALPHA, 1.0)
    series = evolve(p, Grid(512), l_max=1000)
    assert len(series.entries) == 1001
    for e in series.entries:
        assert abs(e.norm - 1) < 1e-10


def test_first_kick(params):
    """
    One kick from rest moves no net momentum and puts
    (hbar^2 P^2 / 4)(1 + 4 alpha^2) into kinetic energy
    """
    series = evolve(params, Grid(128), l_max=1)
    assert series.at(0).mean_k == 0.0
    assert abs(series.at(1).mean_k) < 1e-12
    expected = params.hbar_eff ** 2 * params.P ** 2 * (1 + 4 * ALPHA ** 2) / 4
    assert series.at(1).energy == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("m", [-2, -1, 1, 3])
def test_first_kick_populations_match_quadrature(params, m):
    """
    After one kick c_m is the m-th Fourier coefficient of exp(-i P f(x))
    """
    grid = Grid(128)
    kicked = apply_kick(init_uniform(grid), params)

    def integrand(x, part):
        z = np.exp(-1j * params.P * potential_shape(x, params.alpha) - 1j * m * x)
        return z.real if part == "re" else z.imag

    re = quad(integrand, 0, 2 * np.pi, args=("re",), limit=200)[0]
    im = quad(integrand, 0, 2 * np.pi, args=("im",), limit=200)[0]
    expected = (re ** 2 + im ** 2) / (2 * np.pi) ** 2
    assert populations(kicked)[grid.m_max + m] == pytest.approx(expected, abs=1e-10)


def test_no_current_without_skew():
    """
    A plain sine kick carries no current from the homogeneous state
    """
    p = ModelParams.from_phase(3.0, 0.0, 1.0)
    series = evolve(p, Grid(512), l_max=500)
    assert np.all(np.abs(series.mean_k) < 1e-10)


def test_primary_resonance_ballistic_energy():
    """
    At hbar_eff = 4 pi the free flight is the identity, so the energy grows
    as l^2 while the current stays zero
    """
    p = ModelParams.from_phase(0.5, ALPHA, 4 * np.pi)
    series = evolve(p, Grid(512), l_max=20)
    assert series.at(20).energy / series.at(10).energy == pytest.approx(4.0, rel=1e-8)
    assert abs(series.at(20).mean_k) < 1e-9


def test_record_every(params):
    series = evolve(params, Grid(256), l_max=12, record_every=5)
    assert list(series.kicks) == [0, 5, 10, 12]
    with pytest.raises(KeyError):
        series.at(3)


@pytest.mark.parametrize(
    "kwargs", [{"l_max": 0}, {"l_max": 2.5}, {"record_every": 0}]
)
def test_evolve_invalid(params, kwargs):
    with pytest.raises(ValueError):
        evolve_state(params, Grid(64), **kwargs)


def test_aliasing_guard(params):
    """
    Test qratchet.quantum.propagate.evolve_state aborts on edge population
    """
    with pytest.raises(AliasingError) as e:
        evolve(params, Grid(16), l_max=50)
    assert isinstance(e.value, GuardError)
    assert e.value.kick >= 1
    assert e.value.edge_population > e.value.threshold
    assert f"kick {e.value.kick}" in str(e.value)


def test_default_m_max():
    assert default_m_max(3.0, 200) == 512
    assert default_m_max(8.0, 100) == 640
    assert default_m_max(6.0, 200) == 960


def test_evolve_state_returns_final(params):
    series, state = evolve_state(params, Grid(256), beta=0.2, l_max=10)
    assert series.final.mean_k == pytest.approx(current(state))
    assert state.beta == 0.2
    assert edge_population(state) < 1e-8
    k, pops = momentum_distribution(state)
    assert k[0] == -256 + 0.2
    assert pops.sum() == pytest.approx(1.0)


def test_init_states(small_grid):
    s = init_uniform(small_grid, 0.25)
    assert current(s) == 0.25
    assert norm(s) == 1.0
    for bad in [-0.1, 1.0]:
        with pytest.raises(ValueError):
            init_uniform(small_grid, bad)

    s = init_state(small_grid, -0.25)
    assert s.beta == 0.75
    assert current(s) == pytest.approx(-0.25)
    with pytest.raises(ValueError):
        init_state(small_grid, 100.0)
