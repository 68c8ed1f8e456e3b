"""
The classical kicked ratchet map

    p_{l+1} = p_l - K [cos(x_l) + 2 alpha cos(2 x_l)]
    x_{l+1} = x_l + p_{l+1}

its tangent map, and maximal Lyapunov exponents by tangent renormalization.
Positions are reduced mod 2*pi after every step; momenta are left unbounded.
"""
from dataclasses import dataclass, replace
from typing import Optional, Tuple

import numpy as np

from qratchet.model.params import TWOPI, potential_slope

MIN_LYAPUNOV_STEPS = 1000


@dataclass(frozen=True)
class ClassicalState:
    x: float
    p: float
    tangent: Optional[Tuple[float, float]] = None
    log_growth: float = 0.0


def momentum_kick(x, K, alpha):
    """Momentum removed by one kick, K[cos(x) + 2 alpha cos(2x)]"""
    return K * potential_slope(x, alpha)


def _curvature(x, K, alpha):
    """d/dx of the momentum kick, K[sin(x) + 4 alpha sin(2x)]"""
    return K * (np.sin(x) + 4 * alpha * np.sin(2 * x))


def map_step(state, K, alpha):
    """
    One iteration of the map. The tangent vector, if any, is carried along
    unchanged; use tangent_step to propagate it.
    """
    p = state.p - momentum_kick(state.x, K, alpha)
    x = (state.x + p) % TWOPI
    return replace(state, x=float(x), p=float(p))


def inverse_map_step(state, K, alpha):
    """Exact inverse of map_step"""
    x = (state.x - state.p) % TWOPI
    p = state.p + momentum_kick(x, K, alpha)
    return replace(state, x=float(x), p=float(p))


def jacobian(x, K, alpha):
    """Jacobian d(x', p')/d(x, p) of map_step evaluated at x; det is 1"""
    c = _curvature(x, K, alpha)
    return np.array([[1 + c, 1.0], [c, 1.0]])


def tangent_step(state, K, alpha):
    """
    Advance the base point and propagate the tangent (dx, dp) by the exact
    Jacobian:

        dp' = dp + K[sin(x) + 4 alpha sin(2x)] dx
        dx' = dx + dp'

    :raises ValueError: if the state carries no tangent vector
    """
    if state.tangent is None:
        raise ValueError("tangent_step needs a state with a tangent vector")
    dx, dp = state.tangent
    dp = dp + _curvature(state.x, K, alpha) * dx
    dx = dx + dp
    return replace(map_step(state, K, alpha), tangent=(float(dx), float(dp)))


def renormalize(state):
    """Rescale the tangent to unit length, accumulating its log-growth"""
    length = float(np.hypot(*state.tangent))
    return replace(
        state,
        tangent=(state.tangent[0] / length, state.tangent[1] / length),
        log_growth=state.log_growth + np.log(length),
    )


def fixed_points(alpha):
    """
    Positions x* in [0, 2*pi) with cos(x) + 2 alpha cos(2x) = 0; together
    with p = 0 these are fixed points of the map for every K.
    """
    if alpha == 0:
        cosines = [0.0]
    else:
        cosines = [
            c.real
            for c in np.roots([4 * alpha, 1, -2 * alpha])
            if abs(c.imag) < 1e-12 and abs(c.real) <= 1
        ]
    xs = set()
    for c in cosines:
        a = float(np.arccos(c))
        xs.update({a % TWOPI, (TWOPI - a) % TWOPI})
    return sorted(xs)


def lyapunov_field(x0, p0, K, alpha, n_steps, n_transient=0):
    """
    Maximal Lyapunov exponents for many initial conditions at once.

    The tangent starts along (1, 0), is renormalized every step, and its
    log-growth is only accumulated after n_transient steps.

    :param x0: array of initial positions
    :param p0: array of initial momenta
    :returns: array of exponents, one per initial condition
    """
    x = np.array(x0, dtype=float)
    p = np.array(p0, dtype=float)
    dx = np.ones_like(x)
    dp = np.zeros_like(x)
    total = np.zeros_like(x)

    for i in range(n_transient + n_steps):
        c = _curvature(x, K, alpha)
        dp = dp + c * dx
        dx = dx + dp
        p = p - momentum_kick(x, K, alpha)
        x = (x + p) % TWOPI
        length = np.hypot(dx, dp)
        dx /= length
        dp /= length
        if i >= n_transient:
            total += np.log(length)

    return total / n_steps


def lyapunov(ic, K, alpha, n_steps=10000, n_transient=1000):
    """
    Maximal Lyapunov exponent of a single initial condition.

    :param ic: ClassicalState
    :param n_steps: accumulation steps, >= 1000
    :param n_transient: discarded leading steps
    :raises ValueError: if n_steps < 1000
    """
    if n_steps < MIN_LYAPUNOV_STEPS:
        raise ValueError(
            f"n_steps must be >= {MIN_LYAPUNOV_STEPS}, got {n_steps}"
        )
    lam = lyapunov_field([ic.x], [ic.p], K, alpha, n_steps, n_transient)
    return float(lam[0])
