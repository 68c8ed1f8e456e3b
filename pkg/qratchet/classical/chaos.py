"""
Phase portraits and the chaotic fraction of the classical phase space.

Initial conditions sit on a uniform grid over the torus [0, 2pi)^2 (the map
commutes with p -> p + 2pi). They are processed in fixed-size chunks on a
thread pool and reassembled in index order, so results never depend on the
number of workers.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from tqdm import tqdm

from qratchet.classical.kicked_map import lyapunov_field, momentum_kick
from qratchet.errors import BracketError
from qratchet.model.params import TWOPI

LAMBDA_THRESHOLD = 0.05
FRACTION_TARGET = 0.99
FRACTION_GRID = 64
FRACTION_STEPS = 10000
FRACTION_TRANSIENT = 1000

# fixed so chunking never depends on the worker count
_CHUNK = 256


@dataclass
class PhasePortrait:
    points: np.ndarray
    ic_grid: List[Tuple[float, float]]
    K: float
    alpha: float


def torus_grid(count):
    """count x count cell-centred initial conditions over [0, 2pi)^2"""
    axis = TWOPI * (np.arange(count) + 0.5) / count
    x0, p0 = np.meshgrid(axis, axis, indexing="ij")
    return x0.ravel(), p0.ravel()


def phase_portrait(K, alpha, ic_count=20, steps_per_ic=500):
    """
    Iterate a grid of initial conditions and collect (x, p mod 2pi) points.

    :param K: kick strength
    :param alpha: skewness ratio
    :param ic_count: initial conditions per axis
    :param steps_per_ic: iterations per initial condition
    :returns: PhasePortrait whose points array has shape
        (ic_count**2 * steps_per_ic, 2), grouped by initial condition
    """
    x0, p0 = torus_grid(ic_count)
    x, p = x0.copy(), p0.copy()
    trail = np.empty((steps_per_ic, x.size, 2))
    for n in range(steps_per_ic):
        p = p - momentum_kick(x, K, alpha)
        x = (x + p) % TWOPI
        trail[n, :, 0] = x
        trail[n, :, 1] = p % TWOPI
    points = trail.transpose(1, 0, 2).reshape(-1, 2)
    return PhasePortrait(points, list(zip(x0.tolist(), p0.tolist())), K, alpha)


def lyapunov_grid(
    K,
    alpha,
    ic_grid=FRACTION_GRID,
    n_steps=FRACTION_STEPS,
    n_transient=FRACTION_TRANSIENT,
    threads=None,
    show_progress=False,
):
    """Lyapunov exponents for every initial condition of a torus grid"""
    x0, p0 = torus_grid(ic_grid)
    starts = range(0, x0.size, _CHUNK)

    def run(i):
        return lyapunov_field(
            x0[i : i + _CHUNK], p0[i : i + _CHUNK], K, alpha, n_steps, n_transient
        )

    with ThreadPoolExecutor(max_workers=threads) as tpex:
        chunks = list(
            tqdm(
                tpex.map(run, starts),
                total=len(starts),
                disable=not show_progress,
                leave=False,
            )
        )
    return np.concatenate(chunks)


def chaos_fraction(
    K,
    alpha,
    ic_grid=FRACTION_GRID,
    n_steps=FRACTION_STEPS,
    lambda_threshold=LAMBDA_THRESHOLD,
    **kwargs,
):
    """
    Fraction of initial conditions whose Lyapunov exponent exceeds
    lambda_threshold.

    :param K: kick strength
    :param alpha: skewness ratio
    :param ic_grid: initial conditions per axis
    :param n_steps: accumulation steps per initial condition
    :param lambda_threshold: exponent above which an orbit counts as chaotic
    :returns: fraction in [0, 1]
    """
    lams = lyapunov_grid(K, alpha, ic_grid, n_steps, **kwargs)
    return float(np.count_nonzero(lams > lambda_threshold) / lams.size)


def find_chaos_threshold(
    alpha,
    K_lo=0.25 * np.pi,
    K_hi=np.pi,
    fraction_target=FRACTION_TARGET,
    tolerance=0.01 * np.pi,
    **kwargs,
):
    """
    Bisect on K for the kick strength at which the chaotic fraction first
    reaches fraction_target.

    :param alpha: skewness ratio
    :param K_lo: lower bracket, must have fraction < target
    :param K_hi: upper bracket, must have fraction >= target
    :param tolerance: final bracket width
    :param kwargs: forwarded to chaos_fraction
    :raises BracketError: if the bracket does not straddle the target
    :returns: midpoint of the final bracket
    """
    f_lo = chaos_fraction(K_lo, alpha, **kwargs)
    if f_lo >= fraction_target:
        raise BracketError(
            f"chaos fraction {f_lo:.4f} at K_lo={K_lo:.4f} already reaches "
            f"the target {fraction_target}"
        )
    f_hi = chaos_fraction(K_hi, alpha, **kwargs)
    if f_hi < fraction_target:
        raise BracketError(
            f"chaos fraction {f_hi:.4f} at K_hi={K_hi:.4f} is below "
            f"the target {fraction_target}"
        )

    lo, hi = K_lo, K_hi
    while hi - lo >= tolerance:
        mid = 0.5 * (lo + hi)
        if chaos_fraction(mid, alpha, **kwargs) >= fraction_target:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def threshold_table(alphas, K_lo=0.25 * np.pi, K_hi=np.pi, **kwargs):
    """
    find_chaos_threshold for several skewness ratios.

    :returns: list of (alpha, K_thr, error message or None)
    """
    rows = []
    for alpha in alphas:
        print(f"Bisecting the chaos threshold for alpha={alpha}")
        try:
            rows.append((alpha, find_chaos_threshold(alpha, K_lo, K_hi, **kwargs), None))
        except BracketError as e:
            rows.append((alpha, None, str(e)))
    return rows
