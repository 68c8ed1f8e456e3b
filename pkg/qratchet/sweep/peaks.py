"""
Peak detection on scan results and checks on how peaks grow with time.
"""
from dataclasses import dataclass, field
from typing import Any, List

import numpy as np
from scipy.stats import linregress

from qratchet.errors import FitError
from qratchet.model.resonance import S_MAX, TOL_ABS, classify_resonance
from qratchet.quantum.propagate import evolve
from qratchet.sweep.scan import HBAR_OVER_PI

WINDOW = 9
THRESHOLD_RATIO = 5.0


@dataclass
class Peak:
    param_value: float
    mean_k: float
    label: Any
    prominence: float


@dataclass
class PeakCatalog:
    peaks: List[Peak] = field(default_factory=list)

    def __len__(self):
        return len(self.peaks)

    def labels(self):
        return [p.label.as_tuple() for p in self.peaks if p.label.resonant]

    def near(self, value, tolerance=0.01):
        return [p for p in self.peaks if abs(p.param_value - value) <= tolerance]


def detect_peaks(
    result,
    window=WINDOW,
    threshold_ratio=THRESHOLD_RATIO,
    s_max=S_MAX,
    tol_abs=TOL_ABS,
):
    """
    Find rows whose |<k>| is the maximum of the window centred on them and
    exceeds threshold_ratio times the window's median |<k>|. Rows that hit
    the aliasing guard count as zero.

    :param result: ScanResult
    :param window: window width in rows
    :param threshold_ratio: required ratio over the local median
    :returns: PeakCatalog with each peak labelled by classify_resonance
    """
    if len(result.rows) < window:
        raise ValueError(
            f"Need at least {window} rows for peak detection, got {len(result.rows)}"
        )
    signed = result.currents
    mags = np.abs(signed)
    half = window // 2
    axis = result.metadata.get("spec", {}).get("axis", HBAR_OVER_PI)

    catalog = PeakCatalog()
    for i, row in enumerate(result.rows):
        lo, hi = max(0, i - half), min(len(mags), i + half + 1)
        local = mags[lo:hi]
        # first index of a plateau wins
        if mags[i] <= 0 or mags[i] < local.max() or np.any(mags[lo:i] == mags[i]):
            continue
        background = float(np.median(local))
        if mags[i] <= threshold_ratio * background:
            continue
        if axis == HBAR_OVER_PI:
            label = classify_resonance(row.param_value * np.pi, s_max, tol_abs)
        else:
            label = row.label
        catalog.peaks.append(
            Peak(row.param_value, float(signed[i]), label, float(mags[i] - background))
        )
    return catalog


def current_reversals(catalog):
    """Whether the catalog holds peaks with opposite current directions"""
    signs = {np.sign(p.mean_k) for p in catalog.peaks}
    return 1.0 in signs and -1.0 in signs


def peak_growth_check(params, l_list, grid=None, **kwargs):
    """
    Linear fit of |<k>| against the kick count at one parameter point.

    :param params: ModelParams at a detected peak
    :param l_list: at least 3 kick counts
    :raises FitError: with fewer than 3 kick counts
    :returns: (slope, r_squared)
    """
    l_list = sorted(set(int(l) for l in l_list))
    if len(l_list) < 3:
        raise FitError(f"Need at least 3 kick counts, got {len(l_list)}")
    series = evolve(params, grid, 0.0, l_list[-1], record_every=1, **kwargs)
    k = np.abs([series.at(l).mean_k for l in l_list])
    fit = linregress(l_list, k)
    return float(fit.slope), float(fit.rvalue ** 2)
