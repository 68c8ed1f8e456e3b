import numpy as np
import pytest

from qratchet.model.params import (
    Grid,
    ModelParams,
    barrier_height,
    hbar_from_physical,
    potential_shape,
    potential_slope,
)


def test_params_from_phase():
    """
    Test qratchet.model.params.ModelParams.from_phase
    """
    p = ModelParams.from_phase(3.0, 0.3, 1.5 * np.pi)
    assert p.K == pytest.approx(4.5 * np.pi)
    assert p.P == 3.0
    assert p.with_hbar(0.7 * np.pi).P == 3.0
    assert p.with_hbar(0.7 * np.pi).K == pytest.approx(2.1 * np.pi)
    assert p.with_phase(1.0).K == pytest.approx(1.5 * np.pi)

    # P derived from K when not given
    assert ModelParams(2.0, 0.3, 4.0).P == 0.5


@pytest.mark.parametrize(
    "kwargs",
    [
        {"K": 1.0, "alpha": 0.3, "hbar_eff": 0.0},
        {"K": 1.0, "alpha": 0.3, "hbar_eff": -1.0},
        {"K": -1.0, "alpha": 0.3, "hbar_eff": 1.0},
        {"K": 1.0, "alpha": 0.3, "hbar_eff": 1.0, "P": 2.0},
    ],
)
def test_params_invalid(kwargs):
    with pytest.raises(ValueError):
        ModelParams(**kwargs)


def test_negative_phase():
    with pytest.raises(ValueError):
        ModelParams.from_phase(-1.0, 0.3, 1.0)


def test_grid():
    """
    Test qratchet.model.params.Grid
    """
    g = Grid(4)
    assert g.N == 9
    assert list(g.m) == [-4, -3, -2, -1, 0, 1, 2, 3, 4]
    assert g.x[0] == 0.0
    assert g.x[1] == pytest.approx(2 * np.pi / 9)
    for bad in [0, -3, 2.5]:
        with pytest.raises(ValueError):
            Grid(bad)


def test_potential_slope_matches_derivative():
    x = np.linspace(0, 2 * np.pi, 101)
    h = 1e-6
    numeric = (potential_shape(x + h, 0.3) - potential_shape(x - h, 0.3)) / (2 * h)
    assert np.allclose(potential_slope(x, 0.3), numeric, atol=1e-8)


def test_barrier_height():
    """
    Test qratchet.model.params.barrier_height
    """
    # plain sine
    assert barrier_height(2.0, 0.0) == pytest.approx(2.0, abs=1e-10)
    assert barrier_height(0.0, 0.3) == 0.0

    # dense brute force at alpha = 0.3
    xs = np.linspace(0, 2 * np.pi, 2_000_001)
    brute = potential_shape(xs, 0.3).max()
    assert barrier_height(1.0, 0.3) == pytest.approx(brute, abs=1e-10)
    assert barrier_height(5.0, 0.3) == pytest.approx(5 * brute, abs=1e-9)

    with pytest.raises(ValueError):
        barrier_height(-1.0, 0.3)


def test_hbar_from_physical():
    assert hbar_from_physical(2.0, 0.25) == 4.0
    with pytest.raises(ValueError):
        hbar_from_physical(0.0, 1.0)
    with pytest.raises(ValueError):
        hbar_from_physical(1.0, -1.0)


@pytest.mark.parametrize(
    "x,alpha,expected",
    [(0.0, 0.3, 0.0), (np.pi / 2, 0.0, 1.0), (np.pi / 2, 0.3, 1.0)],
)
def test_potential_shape(x, alpha, expected):
    assert potential_shape(x, alpha) == pytest.approx(expected, abs=1e-15)


def test_barrier_height_analytic():
    """
    The maximum sits where cos x solves 1.2 c^2 + c - 0.6 = 0
    """
    c = (-1 + np.sqrt(3.88)) / 2.4
    x = np.arccos(c)
    assert barrier_height(1.0, 0.3) == pytest.approx(potential_shape(x, 0.3), abs=1e-10)
    assert barrier_height(2.0, 0.3) == pytest.approx(2 * barrier_height(1.0, 0.3))
