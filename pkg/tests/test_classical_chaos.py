import numpy as np
import pytest

from qratchet.classical.chaos import (
    chaos_fraction,
    find_chaos_threshold,
    lyapunov_grid,
    phase_portrait,
    threshold_table,
    torus_grid,
)
from qratchet.errors import BracketError

ALPHA = 0.3


def test_torus_grid():
    x0, p0 = torus_grid(2)
    assert x0 == pytest.approx([np.pi / 2, np.pi / 2, 3 * np.pi / 2, 3 * np.pi / 2])
    assert p0 == pytest.approx([np.pi / 2, 3 * np.pi / 2, np.pi / 2, 3 * np.pi / 2])


def test_phase_portrait():
    """
    Test qratchet.classical.chaos.phase_portrait
    """
    portrait = phase_portrait(0.55 * np.pi, ALPHA, ic_count=4, steps_per_ic=50)
    assert portrait.points.shape == (4 * 4 * 50, 2)
    assert len(portrait.ic_grid) == 16
    assert np.all((portrait.points >= 0) & (portrait.points < 2 * np.pi))

    # with no kick every orbit stays on its own momentum line
    flat = phase_portrait(0.0, ALPHA, ic_count=3, steps_per_ic=10)
    for i, (_, p0) in enumerate(flat.ic_grid):
        assert np.allclose(flat.points[i * 10 : (i + 1) * 10, 1], p0)


def test_lyapunov_grid_independent_of_threads():
    # 20 x 20 = 400 initial conditions spans two chunks
    kwargs = {"ic_grid": 20, "n_steps": 1000, "n_transient": 50}
    one = lyapunov_grid(0.7 * np.pi, ALPHA, threads=1, **kwargs)
    many = lyapunov_grid(0.7 * np.pi, ALPHA, threads=4, **kwargs)
    assert one.shape == (400,)
    assert np.array_equal(one, many)


def test_chaos_fraction_limits():
    kwargs = {"ic_grid": 8, "n_steps": 1000, "n_transient": 100}
    assert chaos_fraction(0.0, ALPHA, **kwargs) == 0.0
    assert chaos_fraction(3 * np.pi, ALPHA, **kwargs) >= 0.9


def test_find_chaos_threshold_bisects(mocker):
    """
    Test qratchet.classical.chaos.find_chaos_threshold with a linear
    fraction curve crossing 0.99 at K = 0.99 pi
    """
    mock_fraction = mocker.patch("qratchet.classical.chaos.chaos_fraction")
    mock_fraction.side_effect = lambda K, alpha, **kw: K / np.pi

    K_thr = find_chaos_threshold(ALPHA, 0.25 * np.pi, np.pi, 0.99, 0.01 * np.pi)
    assert abs(K_thr - 0.99 * np.pi) <= 0.01 * np.pi
    assert mock_fraction.call_count > 2


@pytest.mark.parametrize("value", [0.0, 1.0])
def test_find_chaos_threshold_bad_bracket(mocker, value):
    mock_fraction = mocker.patch("qratchet.classical.chaos.chaos_fraction")
    mock_fraction.return_value = value
    with pytest.raises(BracketError):
        find_chaos_threshold(ALPHA)


def test_threshold_table(mocker):
    mock_fraction = mocker.patch("qratchet.classical.chaos.chaos_fraction")
    mock_fraction.side_effect = lambda K, alpha, **kw: K / np.pi if alpha else 0.0

    rows = threshold_table([0.3, 0.0], fraction_target=0.99)
    assert rows[0][0] == 0.3
    assert rows[0][1] == pytest.approx(0.99 * np.pi, abs=0.01 * np.pi)
    assert rows[0][2] is None
    assert rows[1][0] == 0.0
    assert rows[1][1] is None
    assert "below" in rows[1][2]
