import numpy as np
import pytest

from qratchet.errors import FitError
from qratchet.model.params import ModelParams
from qratchet.model.resonance import NON_RESONANT
from qratchet.quantum.propagate import CurrentSeries, SeriesEntry
from qratchet.sweep.peaks import (
    PeakCatalog,
    current_reversals,
    detect_peaks,
    peak_growth_check,
)
from qratchet.sweep.scan import ScanResult, ScanRow

VALUES = [round(0.1 + 0.05 * i, 10) for i in range(30)]


def synthetic_scan(currents, errors=None, axis="hbar_over_pi"):
    errors = errors or {}
    rows = []
    for i, (v, k) in enumerate(zip(VALUES, currents)):
        if i in errors:
            rows.append(ScanRow(v, None, None, NON_RESONANT, error=errors[i]))
        else:
            rows.append(ScanRow(v, k, 1.0, NON_RESONANT))
    return ScanResult(rows, {"spec": {"axis": axis}})


def background():
    return [0.1 + 0.01 * (i % 3) for i in range(len(VALUES))]


def test_detect_peaks():
    """
    Test qratchet.sweep.peaks.detect_peaks on an isolated positive and
    negative spike
    """
    currents = background()
    currents[10] = 5.0  # hbar/pi = 0.6
    currents[20] = -3.0  # hbar/pi = 1.1
    catalog = detect_peaks(synthetic_scan(currents))

    assert len(catalog) == 2
    first, second = catalog.peaks
    assert first.param_value == 0.6
    assert first.mean_k == 5.0
    assert first.label.as_tuple() == (3, 20)
    assert first.prominence == pytest.approx(5.0 - np.median(np.abs(currents[6:15])))
    assert second.mean_k == -3.0
    assert second.label.as_tuple() == (11, 40)
    assert catalog.labels() == [(3, 20), (11, 40)]
    assert [p.param_value for p in catalog.near(1.1)] == [1.1]
    assert current_reversals(catalog)


def test_detect_peaks_threshold():
    currents = background()
    currents[10] = 0.4
    assert len(detect_peaks(synthetic_scan(currents))) == 0
    assert len(detect_peaks(synthetic_scan(currents), threshold_ratio=3.0)) == 1


def test_plateau_reports_first_row():
    currents = background()
    currents[10] = currents[11] = 5.0
    catalog = detect_peaks(synthetic_scan(currents))
    assert [p.param_value for p in catalog.peaks] == [0.6]


def test_failed_rows_count_as_zero():
    currents = background()
    currents[10] = 5.0
    catalog = detect_peaks(synthetic_scan(currents, errors={10: "aliasing at kick 3"}))
    assert len(catalog) == 0


def test_phase_axis_keeps_row_label():
    currents = background()
    currents[5] = 2.0
    catalog = detect_peaks(synthetic_scan(currents, axis="P"))
    assert catalog.peaks[0].label == NON_RESONANT


def test_too_few_rows():
    result = synthetic_scan(background()[:5])
    with pytest.raises(ValueError):
        detect_peaks(result, window=9)


def test_current_reversals_same_sign():
    currents = background()
    currents[10] = 5.0
    currents[20] = 3.0
    assert not current_reversals(detect_peaks(synthetic_scan(currents)))
    assert not current_reversals(PeakCatalog())


def test_peak_growth_check(mocker):
    """
    Test qratchet.sweep.peaks.peak_growth_check fits |<k>| against l
    """
    series = CurrentSeries([SeriesEntry(l, -0.5 * l, 1.0, 0.0) for l in range(31)])
    mock_evolve = mocker.patch("qratchet.sweep.peaks.evolve", return_value=series)
    params = ModelParams.from_phase(1.0, 0.3, 1.5 * np.pi)

    slope, r_squared = peak_growth_check(params, [10, 20, 30])
    assert slope == pytest.approx(0.5)
    assert r_squared == pytest.approx(1.0)
    assert mock_evolve.call_args[0][3] == 30

    with pytest.raises(FitError):
        peak_growth_check(params, [10, 20, 20])
