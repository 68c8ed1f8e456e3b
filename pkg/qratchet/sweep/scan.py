"""
Parameter sweeps of the ratchet current.

Every sample point is an independent evolution. Points are fanned out over a
thread pool and written back into a pre-allocated row list by index, so the
result never depends on the number of workers or on scheduling.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

import qratchet
from qratchet.errors import AliasingError, ConfigError
from qratchet.model.params import Grid, ModelParams
from qratchet.model.resonance import S_MAX, TOL_ABS, classify_resonance
from qratchet.quantum.ensemble import gaussian_beta_spread, quasimomentum_average
from qratchet.quantum.propagate import (
    ALIASING_THRESHOLD,
    CurrentSeries,
    default_m_max,
    evolve,
)

HBAR_OVER_PI = "hbar_over_pi"
PHASE = "P"
AXES = (HBAR_OVER_PI, PHASE)


def linear_grid(start=0.1, stop=4.0, step=0.005):
    """
    Evenly spaced samples from start to stop inclusive, rounded to 10
    decimals so that resonant hbar/pi values like 0.6 or 1.125 land exactly
    on the grid.
    """
    if step <= 0:
        raise ConfigError(f"step must be > 0, got {step}")
    count = int(round((stop - start) / step)) + 1
    return [round(start + i * step, 10) for i in range(count)]


@dataclass
class ScanSpec:
    """
    A one-dimensional sweep over hbar/pi (with P fixed) or over P (with
    hbar/pi fixed).
    """

    axis: str
    values: List[float]
    alpha: float = 0.3
    P: Optional[float] = None
    hbar_over_pi: Optional[float] = None
    l_max: int = 200
    record: str = "final"
    beta_spread: Optional[Tuple[float, int]] = None
    m_max: Optional[int] = None
    aliasing_threshold: float = ALIASING_THRESHOLD

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        if not self.values:
            raise ConfigError("A scan needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ConfigError("Scan values must be strictly increasing")
        if int(self.l_max) != self.l_max or self.l_max < 1:
            raise ConfigError(f"l_max must be a positive integer, got {self.l_max}")
        if self.record not in ("final", "full"):
            raise ConfigError(f"record must be 'final' or 'full', got {self.record!r}")
        if self.axis == HBAR_OVER_PI and self.P is None:
            raise ConfigError("A scan over hbar/pi needs a fixed P")
        if self.axis == PHASE and self.hbar_over_pi is None:
            raise ConfigError("A scan over P needs a fixed hbar/pi")

    def params_at(self, value):
        if self.axis == HBAR_OVER_PI:
            return ModelParams.from_phase(self.P, self.alpha, value * np.pi)
        return ModelParams.from_phase(value, self.alpha, self.hbar_over_pi * np.pi)

    def grid(self):
        if self.m_max is not None:
            return Grid(self.m_max)
        largest_P = max(self.values) if self.axis == PHASE else self.P
        return Grid(default_m_max(largest_P, self.l_max))


@dataclass
class ScanRow:
    param_value: float
    mean_k: Optional[float]
    norm: Optional[float]
    label: Any
    error: Optional[str] = None
    series: Optional[CurrentSeries] = None


@dataclass
class ScanResult:
    rows: List[ScanRow]
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def values(self):
        return np.array([r.param_value for r in self.rows])

    @property
    def currents(self):
        """Row currents with failed rows as 0"""
        return np.array([0.0 if r.error else r.mean_k for r in self.rows])


def _run_point(spec, grid, value):
    params = spec.params_at(value)
    label = classify_resonance(params.hbar_eff, S_MAX, TOL_ABS)
    record_every = 1 if spec.record == "full" else spec.l_max
    try:
        if spec.beta_spread:
            betas, weights = gaussian_beta_spread(*spec.beta_spread)
            series = quasimomentum_average(
                params,
                grid,
                betas,
                weights,
                spec.l_max,
                record_every=record_every,
                threads=1,
                aliasing_threshold=spec.aliasing_threshold,
            )
        else:
            series = evolve(
                params,
                grid,
                0.0,
                spec.l_max,
                record_every=record_every,
                aliasing_threshold=spec.aliasing_threshold,
            )
    except AliasingError as e:
        return ScanRow(value, None, None, label, error=f"aliasing at kick {e.kick}")
    final = series.final
    return ScanRow(
        value,
        final.mean_k,
        final.norm,
        label,
        series=series if spec.record == "full" else None,
    )


def scan(spec, threads=None, show_progress=False):
    """
    Run a sweep and record <k> after spec.l_max kicks at every sample.

    Aliasing aborts are captured per row in its error field.

    :param spec: ScanSpec
    :param threads: worker count, defaults to the executor's choice
    :param show_progress: show a progress bar
    :returns: ScanResult with one row per value, in the requested order
    """
    grid = spec.grid()
    print(
        f"Scanning {len(spec.values)} values of {spec.axis} "
        f"({spec.l_max} kicks, m_max={grid.m_max})"
    )

    rows = [None] * len(spec.values)

    def run(i):
        rows[i] = _run_point(spec, grid, spec.values[i])

    with ThreadPoolExecutor(max_workers=threads) as tpex:
        for _ in tqdm(
            tpex.map(run, range(len(rows))),
            total=len(rows),
            disable=not show_progress,
            leave=False,
        ):
            pass

    failed = sum(1 for r in rows if r.error)
    if failed:
        print(f"{failed} of {len(rows)} rows hit the aliasing guard")

    metadata = {
        "spec": asdict(spec),
        "version": qratchet.__version__,
        "grid": {"m_max": grid.m_max, "N": grid.N},
    }
    return ScanResult(rows, metadata)


def acceleration_rate(params, grid=None, beta=0.0, l=100, **kwargs):
    """
    Average current acceleration Gamma = <k>/l after l kicks.

    :raises ValueError: if l < 1
    """
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")
    series = evolve(params, grid, beta, l, record_every=l, **kwargs)
    return series.final.mean_k / l


@dataclass
class GammaRow:
    P: float
    gamma: Optional[float]
    error: Optional[str] = None


def gamma_curve(
    hbar_eff,
    P_values,
    alpha,
    l=100,
    m_max=None,
    threads=None,
    show_progress=False,
):
    """
    Gamma as a function of P at fixed hbar_eff.

    :returns: list of GammaRow in the order of P_values
    """
    P_values = list(P_values)
    if not P_values:
        raise ConfigError("gamma_curve needs at least one P value")
    grid = Grid(m_max or default_m_max(max(P_values), l))

    def run(P):
        params = ModelParams.from_phase(P, alpha, hbar_eff)
        try:
            return GammaRow(P, acceleration_rate(params, grid, 0.0, l))
        except AliasingError as e:
            return GammaRow(P, None, error=f"aliasing at kick {e.kick}")

    with ThreadPoolExecutor(max_workers=threads) as tpex:
        return list(
            tqdm(
                tpex.map(run, P_values),
                total=len(P_values),
                disable=not show_progress,
                leave=False,
            )
        )
