"""
qratchet command line front end.

Every subcommand writes CSV tables plus JSON sidecars into --out. Exit codes:
0 success, 2 configuration error, 3 runtime guard violation (aliasing or
basis cutoff).
"""
import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from qratchet.bands.bloch import count_bands_sweep, fit_sqrt_scaling
from qratchet.classical.chaos import (
    chaos_fraction,
    find_chaos_threshold,
    phase_portrait,
    threshold_table,
)
from qratchet.cli.config import load_config, merge, nonempty, positive_int
from qratchet.cli.presets import describe_presets, get_preset
from qratchet.errors import AliasingError, ConfigError, FitError, GuardError
from qratchet.model.params import Grid, ModelParams
from qratchet.model.resonance import label_mismatches
from qratchet.quantum.ensemble import gaussian_beta_spread, quasimomentum_average
from qratchet.quantum.propagate import evolve_state
from qratchet.quantum.state import momentum_distribution
from qratchet.sweep import output
from qratchet.sweep.peaks import PeakCatalog, current_reversals, detect_peaks
from qratchet.sweep.scan import ScanSpec, gamma_curve, linear_grid, scan

# argparse dest -> (config section, key); "{command}" is the subcommand's section
FLAG_MAP = {
    "alpha": ("model", "alpha"),
    "m_max": ("grid", "m_max"),
    "kicks": ("{command}", "kicks"),
    "hbar_over_pi": ("{command}", "hbar_over_pi"),
    "P": ("{command}", "P"),
    "beta": ("evolve", "beta"),
    "record_every": ("evolve", "record_every"),
    "distribution": ("evolve", "distribution"),
    "axis": ("scan", "axis"),
    "values": ("scan", "values"),
    "start": ("scan", "start"),
    "stop": ("scan", "stop"),
    "step": ("scan", "step"),
    "window": ("scan", "window"),
    "threshold_ratio": ("scan", "threshold_ratio"),
    "K_over_pi": ("classical", "K_over_pi"),
    "find_threshold": ("classical", "find_threshold"),
    "alphas": ("classical", "alphas"),
    "fraction_grid": ("classical", "fraction_grid"),
    "fraction_steps": ("classical", "fraction_steps"),
    "depths": ("bands", "depths"),
    "beta_samples": ("bands", "beta_samples"),
}


def _tag(value):
    return f"{value:g}"


def _echo(config, command):
    return {s: config[s] for s in ("model", "grid", command)}


def cmd_evolve(config, out, threads, show_progress, prefix):
    ev = config["evolve"]
    alpha = config["model"]["alpha"]
    kicks = positive_int(ev["kicks"], "kicks")
    record_every = positive_int(ev["record_every"], "record_every")
    hbars = nonempty(ev["hbar_over_pi"], "evolve.hbar_over_pi")
    phases = nonempty(ev["P"], "evolve.P")
    m_max = config["grid"]["m_max"]
    threshold = config["grid"]["aliasing_threshold"]
    spread = ev["beta_spread"]
    if spread and ev["beta"] != 0.0:
        raise ConfigError(
            "evolve.beta and evolve.beta_spread are exclusive; the spread is "
            "centred on beta = 0"
        )

    pairs = [(h, P) for h in hbars for P in phases]
    print(f"Evolving {len(pairs)} (hbar/pi, P) pairs for {kicks} kicks")

    def run(pair):
        h, P = pair
        params = ModelParams.from_phase(P, alpha, h * np.pi)
        grid = Grid(m_max) if m_max else None
        try:
            if spread:
                betas, weights = gaussian_beta_spread(*spread)
                series = quasimomentum_average(
                    params,
                    grid,
                    betas,
                    weights,
                    kicks,
                    record_every=record_every,
                    threads=1,
                    aliasing_threshold=threshold,
                )
                return series, None
            return evolve_state(
                params,
                grid,
                ev["beta"],
                kicks,
                record_every=record_every,
                aliasing_threshold=threshold,
            )
        except AliasingError as e:
            raise GuardError(f"hbar/pi={_tag(h)}, P={_tag(P)}: {e}") from e

    with ThreadPoolExecutor(max_workers=threads) as tpex:
        results = list(tpex.map(run, pairs))

    echo = _echo(config, "evolve")
    for (h, P), (series, final) in zip(pairs, results):
        name = f"{prefix}_hbar{_tag(h)}pi_P{_tag(P)}"
        extra = {"hbar_over_pi": h, "P": P}
        output.write_series_csv(os.path.join(out, f"{name}.csv"), series, echo, extra)
        if ev["distribution"] and final is not None:
            k, pops = momentum_distribution(final)
            output.write_csv(
                os.path.join(out, f"{name}_distribution.csv"),
                output.DISTRIBUTION_HEADER,
                zip(k, pops),
                echo,
                extra,
            )


def cmd_scan(config, out, threads, show_progress, prefix):
    sc = config["scan"]
    values = sc["values"]
    if values is None:
        values = linear_grid(sc["start"], sc["stop"], sc["step"])
    spec = ScanSpec(
        axis=sc["axis"],
        values=nonempty(values, "scan.values"),
        alpha=config["model"]["alpha"],
        P=sc["P"] if sc["axis"] == "hbar_over_pi" else None,
        hbar_over_pi=sc["hbar_over_pi"],
        l_max=positive_int(sc["kicks"], "kicks"),
        record=sc["record"],
        beta_spread=tuple(sc["beta_spread"]) if sc["beta_spread"] else None,
        m_max=config["grid"]["m_max"],
        aliasing_threshold=config["grid"]["aliasing_threshold"],
    )
    result = scan(spec, threads=threads, show_progress=show_progress)

    echo = _echo(config, "scan")
    output.write_scan_csv(os.path.join(out, f"{prefix}_scan.csv"), result, echo)
    if spec.record == "full":
        for row in result.rows:
            if row.series is not None:
                path = os.path.join(
                    out, f"{prefix}_series", f"{spec.axis}{_tag(row.param_value)}.csv"
                )
                output.write_series_csv(path, row.series, echo)

    window = positive_int(sc["window"], "window")
    if len(result.rows) >= window:
        catalog = detect_peaks(result, window, sc["threshold_ratio"])
    else:
        print(f"Fewer than {window} rows; skipping peak detection")
        catalog = PeakCatalog()
    for p in catalog.peaks:
        print(f"Peak at {spec.axis}={_tag(p.param_value)}: <k>={p.mean_k:.3f} {p.label}")
    output.write_peaks_csv(
        os.path.join(out, f"{prefix}_peaks.csv"),
        catalog,
        echo,
        {
            "current_reversals": current_reversals(catalog),
            "label_mismatches": label_mismatches(),
        },
    )


def cmd_classical(config, out, threads, show_progress, prefix):
    cl = config["classical"]
    alpha = config["model"]["alpha"]
    Ks = nonempty(cl["K_over_pi"], "classical.K_over_pi")
    echo = _echo(config, "classical")
    lyap = {
        "ic_grid": positive_int(cl["fraction_grid"], "fraction_grid"),
        "n_steps": positive_int(cl["fraction_steps"], "fraction_steps"),
        "lambda_threshold": cl["lambda_threshold"],
        "n_transient": cl["fraction_transient"],
        "threads": threads,
        "show_progress": show_progress,
    }

    fractions = []
    for K in Ks:
        portrait = phase_portrait(K * np.pi, alpha, cl["ic_count"], cl["steps_per_ic"])
        output.write_csv(
            os.path.join(out, f"{prefix}_portrait_K{_tag(K)}pi.csv"),
            output.PORTRAIT_HEADER,
            portrait.points,
            echo,
            {"K_over_pi": K},
        )
        fraction = chaos_fraction(K * np.pi, alpha, **lyap)
        print(f"Chaotic fraction at K={_tag(K)}pi: {fraction:.4f}")
        fractions.append([K * np.pi, K, fraction])
    output.write_csv(
        os.path.join(out, f"{prefix}_fractions.csv"),
        output.FRACTION_HEADER,
        fractions,
        echo,
    )

    if cl["find_threshold"]:
        K_thr = find_chaos_threshold(
            alpha,
            cl["K_lo_over_pi"] * np.pi,
            cl["K_hi_over_pi"] * np.pi,
            cl["fraction_target"],
            **lyap,
        )
        print(f"K_thr = {K_thr / np.pi:.4f} pi for alpha={alpha}")
        output.write_json(
            os.path.join(out, f"{prefix}_threshold.json"),
            {"alpha": alpha, "K_thr": K_thr, "K_thr_over_pi": K_thr / np.pi, "config": echo},
        )

    if cl["alphas"]:
        rows = threshold_table(
            cl["alphas"],
            cl["K_lo_over_pi"] * np.pi,
            cl["K_hi_over_pi"] * np.pi,
            fraction_target=cl["fraction_target"],
            **lyap,
        )
        output.write_csv(
            os.path.join(out, f"{prefix}_thresholds.csv"),
            output.THRESHOLD_HEADER,
            [[a, K, None if K is None else K / np.pi, err] for a, K, err in rows],
            echo,
        )


def cmd_bands(config, out, threads, show_progress, prefix):
    b = config["bands"]
    alpha = config["model"]["alpha"]
    depths = b["depths"]
    if depths is None:
        count = positive_int(b["depth_count"], "depth_count")
        depths = [
            float(d)
            for d in np.logspace(np.log10(b["depth_start"]), np.log10(b["depth_stop"]), count)
        ]
    depths = nonempty(depths, "bands.depths")
    echo = _echo(config, "bands")

    reports = count_bands_sweep(
        depths, alpha, b["m_max"], b["beta_samples"], threads, show_progress
    )
    output.write_csv(
        os.path.join(out, f"{prefix}_bands.csv"),
        output.BAND_HEADER,
        [[r.depth, r.barrier, r.n_below] for r in reports],
        echo,
    )

    fit_path = os.path.join(out, f"{prefix}_bands_fit.json")
    try:
        exponent, prefactor, r_squared = fit_sqrt_scaling(
            depths, alpha, counts=[r.n_below for r in reports]
        )
    except FitError as e:
        output.write_json(fit_path, {"error": str(e), "config": echo})
        raise
    print(f"n ~ {prefactor:.3f} * depth^{exponent:.3f} (R^2={r_squared:.4f})")
    output.write_json(
        fit_path,
        {
            "exponent": exponent,
            "prefactor": prefactor,
            "r_squared": r_squared,
            "config": echo,
        },
    )


def cmd_gamma(config, out, threads, show_progress, prefix):
    g = config["gamma"]
    alpha = config["model"]["alpha"]
    kicks = positive_int(g["kicks"], "kicks")
    phases = g["P"]
    if phases is None:
        phases = linear_grid(g["P_start"], g["P_stop"], g["P_step"])
    phases = nonempty(phases, "gamma.P")
    echo = _echo(config, "gamma")

    for h in nonempty(g["hbar_over_pi"], "gamma.hbar_over_pi"):
        print(f"Acceleration rates at hbar/pi={_tag(h)} over {len(phases)} values of P")
        rows = gamma_curve(
            h * np.pi,
            phases,
            alpha,
            kicks,
            m_max=config["grid"]["m_max"],
            threads=threads,
            show_progress=show_progress,
        )
        output.write_csv(
            os.path.join(out, f"{prefix}_gamma_hbar{_tag(h)}pi.csv"),
            output.GAMMA_HEADER,
            [[r.P, r.gamma, r.error] for r in rows],
            echo,
            {"hbar_over_pi": h},
        )


COMMANDS = {
    "evolve": cmd_evolve,
    "scan": cmd_scan,
    "classical": cmd_classical,
    "bands": cmd_bands,
    "gamma": cmd_gamma,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file")
    common.add_argument("--out", default="out", help="output directory")
    common.add_argument(
        "--threads", type=int, help="worker threads (default: CPU count)"
    )
    common.add_argument("--preset", help="named figure preset, see 'qratchet presets'")
    common.add_argument("--no-progress", action="store_true")
    common.add_argument("--alpha", type=float)
    common.add_argument("--m-max", dest="m_max", type=int)

    parser = argparse.ArgumentParser(
        prog="qratchet", description="Delta-kicked quantum ratchet simulations"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", parents=[common], help="<k>(l) time series")
    p.add_argument("--kicks", type=int)
    p.add_argument("--hbar-over-pi", dest="hbar_over_pi", type=float, nargs="+")
    p.add_argument("--P", dest="P", type=float, nargs="+")
    p.add_argument("--beta", type=float)
    p.add_argument("--record-every", dest="record_every", type=int)
    p.add_argument(
        "--distribution",
        action="store_const",
        const=True,
        help="also write the final momentum distribution",
    )

    p = sub.add_parser("scan", parents=[common], help="<k> vs hbar/pi or P")
    p.add_argument("--kicks", type=int)
    p.add_argument("--axis", choices=["hbar_over_pi", "P"])
    p.add_argument("--values", type=float, nargs="*")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--step", type=float)
    p.add_argument("--P", dest="P", type=float)
    p.add_argument("--hbar-over-pi", dest="hbar_over_pi", type=float)
    p.add_argument("--window", type=int)
    p.add_argument("--threshold-ratio", dest="threshold_ratio", type=float)

    p = sub.add_parser("classical", parents=[common], help="portraits and chaos")
    p.add_argument("--K-over-pi", dest="K_over_pi", type=float, nargs="+")
    p.add_argument("--find-threshold", dest="find_threshold", action="store_const", const=True)
    p.add_argument("--alphas", type=float, nargs="+")
    p.add_argument("--fraction-grid", dest="fraction_grid", type=int)
    p.add_argument("--fraction-steps", dest="fraction_steps", type=int)

    p = sub.add_parser("bands", parents=[common], help="bands below the barrier")
    p.add_argument("--depths", type=float, nargs="*")
    p.add_argument("--beta-samples", dest="beta_samples", type=int)

    p = sub.add_parser("gamma", parents=[common], help="Gamma = <k>/l vs P")
    p.add_argument("--kicks", type=int)
    p.add_argument("--hbar-over-pi", dest="hbar_over_pi", type=float, nargs="+")
    p.add_argument("--P", dest="P", type=float, nargs="+")

    sub.add_parser("presets", help="list figure presets")
    return parser


def flag_layer(args):
    layer = {}
    for dest, (section, key) in FLAG_MAP.items():
        value = getattr(args, dest, None)
        if value is None:
            continue
        section = section.format(command=args.command)
        if dest == "m_max" and args.command == "bands":
            section = "bands"
        layer.setdefault(section, {})[key] = value
    return layer


def main(argv=None):
    args = build_parser().parse_args(argv)

    if args.command == "presets":
        for line in describe_presets():
            print(line)
        return 0

    try:
        preset = get_preset(args.preset, args.command) if args.preset else None
        from_file = load_config(args.config) if args.config else None
        config = merge(preset, from_file, flag_layer(args))
        threads = (
            positive_int(args.threads, "threads")
            if args.threads is not None
            else os.cpu_count()
        )
        COMMANDS[args.command](
            config,
            args.out,
            threads,
            not args.no_progress,
            args.preset or args.command,
        )
    except GuardError as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
