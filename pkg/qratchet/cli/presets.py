"""
Named parameter sets reproducing each published figure panel. Every preset
belongs to one subcommand and is merged over the built-in defaults before
the config file and command-line flags are applied.
"""
import numpy as np

from qratchet.errors import ConfigError

FIG1_P = [0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
FIG1C_P = [1.0, 2.0, 3.0, 4.0, 5.0, 7.0, 8.0]
FIG2_RANGE = {"start": 0.1, "stop": 4.0, "step": 0.005, "kicks": 200}
# ladder half-widths for the P = 0.5, 1, 3, 6 scans; the largest currents need
# several times default_m_max
FIG2_M_MAX = {"fig2a": 1024, "fig2b": 1024, "fig2c": 2048, "fig2d": 4096}
FIG3_K_OVER_PI = [0.25, 0.55, 0.70, 0.8]
FIG4_HBAR_OVER_PI = [0.5, 0.7, 1.5, 2.625]
FIG4_INSET_DEPTHS = [
    round(float(d), 6) for d in np.logspace(np.log10(5), np.log10(200), 12)
]

PRESETS = {
    "fig1a": (
        "evolve",
        {"model": {"alpha": 0.3}, "evolve": {"hbar_over_pi": [1.001], "P": FIG1_P, "kicks": 200}},
    ),
    "fig1b": (
        "evolve",
        {"model": {"alpha": 0.3}, "evolve": {"hbar_over_pi": [0.7], "P": FIG1_P, "kicks": 200}},
    ),
    "fig1c": (
        "evolve",
        {"model": {"alpha": 0.3}, "evolve": {"hbar_over_pi": [2.625], "P": FIG1C_P, "kicks": 200}},
    ),
    "fig1d": (
        "evolve",
        {"model": {"alpha": 0.3}, "evolve": {"hbar_over_pi": [1.5], "P": FIG1_P, "kicks": 200}},
    ),
    "fig2a": (
        "scan",
        {
            "model": {"alpha": 0.3},
            "grid": {"m_max": FIG2_M_MAX["fig2a"]},
            "scan": dict(FIG2_RANGE, P=0.5),
        },
    ),
    "fig2b": (
        "scan",
        {
            "model": {"alpha": 0.3},
            "grid": {"m_max": FIG2_M_MAX["fig2b"]},
            "scan": dict(FIG2_RANGE, P=1.0),
        },
    ),
    "fig2c": (
        "scan",
        {
            "model": {"alpha": 0.3},
            "grid": {"m_max": FIG2_M_MAX["fig2c"]},
            "scan": dict(FIG2_RANGE, P=3.0),
        },
    ),
    "fig2d": (
        "scan",
        {
            "model": {"alpha": 0.3},
            "grid": {"m_max": FIG2_M_MAX["fig2d"]},
            "scan": dict(FIG2_RANGE, P=6.0),
        },
    ),
    "fig3": (
        "classical",
        {"model": {"alpha": 0.3}, "classical": {"K_over_pi": FIG3_K_OVER_PI}},
    ),
    "fig4": (
        "gamma",
        {
            "model": {"alpha": 0.3},
            "gamma": {
                "hbar_over_pi": FIG4_HBAR_OVER_PI,
                "P_start": 0.5,
                "P_stop": 8.0,
                "P_step": 0.25,
                "kicks": 100,
            },
        },
    ),
    "fig4inset": (
        "bands",
        {"model": {"alpha": 0.3}, "bands": {"depths": FIG4_INSET_DEPTHS, "m_max": 128}},
    ),
}


def get_preset(name, command):
    """
    :raises ConfigError: for unknown presets or presets of another command
    :returns: preset config dict
    """
    if name not in PRESETS:
        raise ConfigError(
            f"Unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}"
        )
    owner, config = PRESETS[name]
    if owner != command:
        raise ConfigError(f"Preset {name!r} belongs to '{owner}', not '{command}'")
    return config


def describe_presets():
    lines = []
    for name, (command, config) in PRESETS.items():
        section = config[command]
        settings = ", ".join(f"{k}={v}" for k, v in section.items())
        lines.append(f"{name:<10} {command:<10} {settings}")
    return lines
