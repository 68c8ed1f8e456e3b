"""
CSV tables and JSON sidecars.

CSVs use "." decimals, no thousands separators and LF line endings; floats
are written with repr so identical runs give identical bytes. Each CSV gets
a <name>.json sidecar with the effective configuration, the code version
and the SHA-256 of the CSV bytes.
"""
import csv
import hashlib
import io
import json
import numbers
import os

import qratchet

SCAN_HEADER = ["param", "mean_k", "norm", "r", "s", "error"]
PEAK_HEADER = ["param", "mean_k", "r", "s", "prominence"]
SERIES_HEADER = ["l", "mean_k", "norm", "energy"]
DISTRIBUTION_HEADER = ["k", "population"]
PORTRAIT_HEADER = ["x", "p"]
FRACTION_HEADER = ["K", "K_over_pi", "fraction"]
THRESHOLD_HEADER = ["alpha", "K_thr", "K_thr_over_pi", "error"]
BAND_HEADER = ["depth", "barrier", "n_below"]
GAMMA_HEADER = ["P", "gamma", "error"]


def _cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, numbers.Integral):
        return str(int(v))
    if isinstance(v, numbers.Real):
        return repr(float(v))
    return str(v)


def csv_bytes(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue().encode("utf-8")


def write_csv(path, header, rows, config=None, extra=None):
    """
    Write a CSV table and its JSON sidecar.

    :param path: CSV path; the sidecar is written next to it as <path>.json
    :param header: list of column names
    :param rows: iterable of row sequences
    :param config: effective configuration to echo into the sidecar
    :param extra: additional sidecar fields
    :returns: SHA-256 hex digest of the CSV bytes
    """
    data = csv_bytes(header, rows)
    digest = hashlib.sha256(data).hexdigest()
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "wb") as f:
        f.write(data)
    write_sidecar(path, digest, config, extra)
    print(f"Wrote {path}")
    return digest


def write_sidecar(path, digest, config=None, extra=None):
    meta = {
        "file": os.path.basename(path),
        "sha256": digest,
        "version": qratchet.__version__,
        "config": config or {},
    }
    meta.update(extra or {})
    with open(f"{path}.json", "w", newline="\n") as f:
        json.dump(meta, f, indent=2, sort_keys=True, default=str)
        f.write("\n")


def write_json(path, payload):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="\n") as f:
        json.dump(payload, f, indent=2, sort_keys=True, default=str)
        f.write("\n")
    print(f"Wrote {path}")


def scan_rows(result):
    for r in result.rows:
        rs = r.label.as_tuple() or (None, None)
        yield [r.param_value, r.mean_k, r.norm, rs[0], rs[1], r.error]


def peak_rows(catalog):
    for p in catalog.peaks:
        rs = p.label.as_tuple() or (None, None)
        yield [p.param_value, p.mean_k, rs[0], rs[1], p.prominence]


def series_rows(series):
    for e in series.entries:
        yield [e.l, e.mean_k, e.norm, e.energy]


def write_scan_csv(path, result, config=None):
    return write_csv(
        path, SCAN_HEADER, scan_rows(result), config, {"scan": result.metadata}
    )


def write_peaks_csv(path, catalog, config=None, extra=None):
    return write_csv(path, PEAK_HEADER, peak_rows(catalog), config, extra)


def write_series_csv(path, series, config=None, extra=None):
    return write_csv(path, SERIES_HEADER, series_rows(series), config, extra)
