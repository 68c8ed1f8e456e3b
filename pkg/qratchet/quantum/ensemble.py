"""
Incoherent averaging over a quasi-momentum spread.

Ladders with different quasi-momenta never couple under a 2*pi-periodic
kick, so each offset evolves on its own and the currents are averaged with
the given weights.
"""
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from tqdm import tqdm

from qratchet.model.params import Grid
from qratchet.quantum.propagate import (
    CurrentSeries,
    SeriesEntry,
    default_m_max,
    evolve_state,
)
from qratchet.quantum.state import init_state


def gaussian_beta_spread(sigma, count):
    """
    Deterministic sampling of a zero-centred Gaussian momentum spread:
    count equally spaced offsets over +-3 sigma with Gaussian weights.

    :returns: (offsets, weights) lists, weights summing to 1
    """
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    if int(count) != count or count < 1:
        raise ValueError(f"count must be a positive integer, got {count}")
    if sigma == 0 or count == 1:
        return [0.0], [1.0]
    offsets = np.linspace(-3 * sigma, 3 * sigma, count)
    weights = np.exp(-0.5 * (offsets / sigma) ** 2)
    weights /= weights.sum()
    return offsets.tolist(), weights.tolist()


def quasimomentum_average(
    params,
    grid=None,
    betas=(0.0,),
    weights=(1.0,),
    l_max=200,
    record_every=1,
    threads=None,
    show_progress=False,
    **kwargs,
):
    """
    Weighted average of independent evolutions over initial momentum
    offsets. Offsets may be any real number; each one starts as a plane wave
    on its own ladder (see init_state).

    :param params: ModelParams
    :param grid: Grid shared by every offset
    :param betas: momentum offsets
    :param weights: nonnegative weights summing to 1
    :param l_max: number of kicks
    :param threads: worker count, defaults to the executor's choice
    :raises ValueError: on mismatched or invalid weights
    :returns: CurrentSeries of weighted averages
    """
    betas = list(betas)
    weights = list(weights)
    if len(betas) != len(weights):
        raise ValueError(
            f"Got {len(betas)} offsets but {len(weights)} weights"
        )
    if not betas:
        raise ValueError("At least one offset is required")
    if any(w < 0 for w in weights) or not np.isclose(sum(weights), 1.0):
        raise ValueError(f"weights must be nonnegative and sum to 1: {weights}")
    if grid is None:
        grid = Grid(default_m_max(params.P, l_max))

    def run(offset):
        series, _ = evolve_state(
            params,
            l_max=l_max,
            record_every=record_every,
            initial=init_state(grid, offset),
            **kwargs,
        )
        return series

    with ThreadPoolExecutor(max_workers=threads) as tpex:
        all_series = list(
            tqdm(
                tpex.map(run, betas),
                total=len(betas),
                disable=not show_progress,
                leave=False,
            )
        )

    averaged = CurrentSeries()
    for i, entry in enumerate(all_series[0].entries):
        rows = [s.entries[i] for s in all_series]
        averaged.entries.append(
            SeriesEntry(
                entry.l,
                float(sum(w * r.mean_k for w, r in zip(weights, rows))),
                float(sum(w * r.norm for w, r in zip(weights, rows))),
                float(sum(w * r.energy for w, r in zip(weights, rows))),
            )
        )
    return averaged
