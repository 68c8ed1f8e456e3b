"""
Static Bloch bands of the ratchet potential depth*[sin(x) + alpha*sin(2x)]
and the number of bands that lie entirely below the potential barrier.

The Hamiltonian is H = -(1/2) d^2/dx^2 + depth*f(x) in the plane-wave basis
exp(i(m + beta)x), m = -m_max..m_max. Passing the kick phase amplitude P as
depth gives the potential-height convention used for band counting.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.linalg import eigvalsh
from scipy.stats import linregress
from tqdm import tqdm

from qratchet.errors import CutoffError, FitError
from qratchet.model.params import barrier_height

MIN_M_MAX = 8
MIN_FIT_DEPTHS = 6
MIN_FIT_DECADES = 1.5
BETA_SAMPLES = 33
BAND_M_MAX = 128
CUTOFF_TOLERANCE = 1e-8


@dataclass
class BlochSpectrum:
    beta_samples: np.ndarray
    # energies[i, n] is band n+1 at beta_samples[i]
    energies: np.ndarray

    @property
    def band_maxima(self):
        return self.energies.max(axis=0)

    @property
    def band_minima(self):
        return self.energies.min(axis=0)


@dataclass
class BandCountReport:
    depth: float
    n_below: int
    barrier: float


def beta_grid(count=BETA_SAMPLES):
    """
    Quasi-momenta spanning the half zone [0, 1/2], both band edges included.
    E_n(beta) = E_n(1 - beta) for a real potential, so the other half adds
    nothing.
    """
    if count < 2:
        return np.array([0.0])
    return np.linspace(0.0, 0.5, count)


def build_bloch_hamiltonian(depth, alpha, beta, m_max=BAND_M_MAX):
    """
    Plane-wave Bloch Hamiltonian at quasi-momentum beta.

    Diagonal (m + beta)^2 / 2; sin(x) couples |dm| = 1 with -+i*depth/2 and
    sin(2x) couples |dm| = 2 with -+i*depth*alpha/2.

    :param depth: potential depth
    :param alpha: skewness ratio
    :param beta: quasi-momentum
    :param m_max: basis cutoff, >= 8
    :raises ValueError: if m_max < 8
    :returns: (2*m_max+1) square Hermitian matrix
    """
    if m_max < MIN_M_MAX:
        raise ValueError(f"m_max must be >= {MIN_M_MAX}, got {m_max}")
    k = np.arange(-m_max, m_max + 1) + beta
    n = k.size
    one = np.full(n - 1, 0.5j * depth)
    two = np.full(n - 2, 0.5j * depth * alpha)
    return (
        np.diag(0.5 * k ** 2).astype(complex)
        + np.diag(-one, -1)
        + np.diag(one, 1)
        + np.diag(-two, -2)
        + np.diag(two, 2)
    )


def _lowest(depth, alpha, beta, n_bands, m_max):
    H = build_bloch_hamiltonian(depth, alpha, beta, m_max)
    return eigvalsh(H, subset_by_index=[0, n_bands - 1])


def band_energies(
    depth,
    alpha,
    n_bands,
    beta_samples=BETA_SAMPLES,
    m_max=BAND_M_MAX,
    check_cutoff=True,
):
    """
    Lowest n_bands eigenvalues at every sampled quasi-momentum.

    :param depth: potential depth
    :param alpha: skewness ratio
    :param n_bands: number of bands, <= 2*m_max
    :param beta_samples: number of quasi-momenta (see beta_grid)
    :param m_max: basis cutoff
    :param check_cutoff: re-solve at beta=0 with 2*m_max and fail if any
        requested band moves
    :raises ValueError: if n_bands is out of range
    :raises CutoffError: if the basis is too small for the requested bands
    :returns: BlochSpectrum
    """
    if not 1 <= n_bands <= 2 * m_max:
        raise ValueError(f"n_bands must lie in [1, {2 * m_max}], got {n_bands}")
    betas = beta_grid(beta_samples)
    energies = np.array(
        [_lowest(depth, alpha, b, n_bands, m_max) for b in betas]
    )

    if check_cutoff:
        shift = np.max(
            np.abs(_lowest(depth, alpha, betas[0], n_bands, 2 * m_max) - energies[0])
        )
        if shift > CUTOFF_TOLERANCE:
            raise CutoffError(
                f"Bands moved by {shift:.2e} when doubling m_max={m_max}; "
                "increase the basis cutoff"
            )
    return BlochSpectrum(betas, energies)


def band_widths(spectrum):
    return spectrum.band_maxima - spectrum.band_minima


def count_bands_below_barrier(
    depth, alpha, m_max=BAND_M_MAX, beta_samples=BETA_SAMPLES
):
    """
    Count the bands whose maximum over quasi-momentum lies strictly below
    the barrier height.

    Band n is below the barrier exactly when every sampled quasi-momentum
    has at least n eigenvalues below it, so the count is the minimum over
    beta of the number of eigenvalues below the barrier.

    :returns: BandCountReport
    """
    barrier = barrier_height(depth, alpha)
    counts = []
    for b in beta_grid(beta_samples):
        E = eigvalsh(build_bloch_hamiltonian(depth, alpha, b, m_max))
        counts.append(int(np.count_nonzero(E < barrier)))
    return BandCountReport(depth, min(counts), barrier)


def count_bands_sweep(
    depths,
    alpha,
    m_max=BAND_M_MAX,
    beta_samples=BETA_SAMPLES,
    threads=None,
    show_progress=False,
):
    """count_bands_below_barrier over many depths, in the order given"""

    def run(depth):
        return count_bands_below_barrier(depth, alpha, m_max, beta_samples)

    with ThreadPoolExecutor(max_workers=threads) as tpex:
        return list(
            tqdm(
                tpex.map(run, depths),
                total=len(depths),
                disable=not show_progress,
                leave=False,
            )
        )


def fit_power_law(depths, counts):
    """
    Least-squares line through (log depth, log n), zero counts excluded.

    :raises FitError: with fewer than 3 nonzero counts
    :returns: (exponent, prefactor, r_squared)
    """
    d = np.asarray(depths, dtype=float)
    n = np.asarray(counts, dtype=float)
    keep = (n > 0) & (d > 0)
    if np.count_nonzero(keep) < 3:
        raise FitError(
            f"Need at least 3 nonzero band counts to fit, got "
            f"{np.count_nonzero(keep)}"
        )
    fit = linregress(np.log(d[keep]), np.log(n[keep]))
    return float(fit.slope), float(np.exp(fit.intercept)), float(fit.rvalue ** 2)


def fit_sqrt_scaling(
    depths,
    alpha,
    m_max=BAND_M_MAX,
    beta_samples=BETA_SAMPLES,
    counts=None,
    **kwargs,
):
    """
    Fit n_below ~ prefactor * depth^exponent over a list of depths.

    :param depths: potential depths, ideally >= 6 spanning >= 1.5 decades
    :param alpha: skewness ratio
    :param counts: precomputed band counts, skips the diagonalizations
    :raises FitError: with fewer than 3 nonzero counts
    :returns: (exponent, prefactor, r_squared)
    """
    positive = [d for d in depths if d > 0]
    decades = np.log10(max(positive) / min(positive)) if positive else 0.0
    if len(depths) < MIN_FIT_DEPTHS or decades < MIN_FIT_DECADES:
        print(
            f"Warning: fitting {len(depths)} depths over {decades:.2f} decades; "
            f"the exponent is unreliable below {MIN_FIT_DEPTHS} depths spanning "
            f"{MIN_FIT_DECADES} decades"
        )
    if counts is None:
        reports = count_bands_sweep(depths, alpha, m_max, beta_samples, **kwargs)
        counts = [r.n_below for r in reports]
    return fit_power_law(depths, counts)
