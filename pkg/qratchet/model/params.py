"""
Shared parameter types and the ratchet potential.

Everything here is in scaled units with the spatial and temporal periods set
to one. The flashed potential is K[sin(x) + alpha sin(2x)] and the phase it
imprints per kick is P[sin(x) + alpha sin(2x)] with P = K/hbar_eff.
"""
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

TWOPI = 2 * np.pi

# points used for the coarse scan in barrier_height
_BARRIER_SCAN_POINTS = 4096


@dataclass(frozen=True)
class ModelParams:
    """
    The physical knobs of the kicked ratchet.

    Build from the kick strength with ModelParams(K, alpha, hbar_eff) or from
    the kick phase amplitude with ModelParams.from_phase(P, alpha, hbar_eff).
    """

    K: float
    alpha: float
    hbar_eff: float
    P: float = field(default=None)

    def __post_init__(self):
        if not self.hbar_eff > 0:
            raise ValueError(f"hbar_eff must be > 0, got {self.hbar_eff}")
        if self.K < 0:
            raise ValueError(f"K must be >= 0, got {self.K}")
        if self.P is None:
            object.__setattr__(self, "P", self.K / self.hbar_eff)
        elif not np.isclose(self.P * self.hbar_eff, self.K, rtol=1e-14, atol=0):
            raise ValueError(
                f"P*hbar_eff must equal K, got P={self.P}, "
                f"hbar_eff={self.hbar_eff}, K={self.K}"
            )

    @classmethod
    def from_phase(cls, P, alpha, hbar_eff):
        """Build from the kick phase amplitude P, so that K = hbar_eff * P"""
        if P < 0:
            raise ValueError(f"P must be >= 0, got {P}")
        return cls(K=P * hbar_eff, alpha=alpha, hbar_eff=hbar_eff, P=P)

    def with_phase(self, P):
        return ModelParams.from_phase(P, self.alpha, self.hbar_eff)

    def with_hbar(self, hbar_eff):
        """Same P and alpha at a different hbar_eff (K follows)"""
        return ModelParams.from_phase(self.P, self.alpha, hbar_eff)


@dataclass(frozen=True)
class Grid:
    """
    Momentum ladder m = -m_max..m_max and its N = 2*m_max+1 position nodes
    x_j = 2*pi*j/N. Both representations are exact discrete Fourier partners.
    """

    m_max: int

    def __post_init__(self):
        if int(self.m_max) != self.m_max or self.m_max < 1:
            raise ValueError(f"m_max must be a positive integer, got {self.m_max}")

    @property
    def N(self):
        return 2 * self.m_max + 1

    @property
    def m(self):
        return np.arange(-self.m_max, self.m_max + 1)

    @property
    def x(self):
        return TWOPI * np.arange(self.N) / self.N


def potential_shape(x, alpha):
    """
    K-stripped ratchet potential f(x) = sin(x) + alpha*sin(2x).

    Works elementwise on arrays.
    """
    return np.sin(x) + alpha * np.sin(2 * x)


def potential_slope(x, alpha):
    """f'(x) = cos(x) + 2*alpha*cos(2x)"""
    return np.cos(x) + 2 * alpha * np.cos(2 * x)


def _shape_maximum(alpha):
    xs = TWOPI * np.arange(_BARRIER_SCAN_POINTS) / _BARRIER_SCAN_POINTS
    i = int(np.argmax(potential_shape(xs, alpha)))
    h = TWOPI / _BARRIER_SCAN_POINTS
    res = minimize_scalar(
        lambda x: -potential_shape(x, alpha),
        bounds=(xs[i] - h, xs[i] + h),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return max(-res.fun, potential_shape(xs[i], alpha))


def barrier_height(depth, alpha):
    """
    Maximum over one period of depth*[sin(x) + alpha*sin(2x)].

    Band counting passes the phase amplitude P as depth, the classical
    barrier passes K. The maximum is located by a coarse scan followed by
    bounded refinement and is accurate to well below 1e-10.

    :param depth: nonnegative potential depth
    :param alpha: skewness ratio
    :raises ValueError: if depth is negative
    :returns: barrier height
    """
    if depth < 0:
        raise ValueError(f"depth must be >= 0, got {depth}")
    return depth * _shape_maximum(alpha)


def hbar_from_physical(omega_R, T):
    """
    Effective Planck constant 8*omega_R*T from the recoil frequency and the
    pulse period.

    :raises ValueError: on non-positive inputs
    """
    if not omega_R > 0:
        raise ValueError(f"omega_R must be > 0, got {omega_R}")
    if not T > 0:
        raise ValueError(f"T must be > 0, got {T}")
    return 8 * omega_R * T
