"""
Run configuration: a JSON document with optional sections. Unknown sections
and keys are rejected. Precedence is flags > config file > preset > defaults.
"""
import copy
import json

from qratchet.errors import ConfigError

DEFAULTS = {
    "model": {"alpha": 0.3},
    "grid": {"m_max": None, "aliasing_threshold": 1e-8},
    "evolve": {
        "hbar_over_pi": [1.5],
        "P": [3.0],
        "kicks": 200,
        "record_every": 1,
        "beta": 0.0,
        "beta_spread": None,
        "distribution": False,
    },
    "scan": {
        "axis": "hbar_over_pi",
        "values": None,
        "start": 0.1,
        "stop": 4.0,
        "step": 0.005,
        "P": 0.5,
        "hbar_over_pi": None,
        "kicks": 200,
        "record": "final",
        "beta_spread": None,
        "window": 9,
        "threshold_ratio": 5.0,
    },
    "classical": {
        "K_over_pi": [0.25, 0.55, 0.70, 0.8],
        "ic_count": 20,
        "steps_per_ic": 500,
        "fraction_grid": 64,
        "fraction_steps": 10000,
        "fraction_transient": 1000,
        "lambda_threshold": 0.05,
        "find_threshold": False,
        "K_lo_over_pi": 0.25,
        "K_hi_over_pi": 1.0,
        "fraction_target": 0.99,
        "alphas": [],
    },
    "bands": {
        "depths": None,
        "depth_start": 5.0,
        "depth_stop": 200.0,
        "depth_count": 12,
        "m_max": 128,
        "beta_samples": 33,
    },
    "gamma": {
        "hbar_over_pi": [1.5],
        "P": None,
        "P_start": 0.5,
        "P_stop": 8.0,
        "P_step": 0.25,
        "kicks": 100,
    },
}


def check_keys(config, source):
    """
    :raises ConfigError: if config has sections or keys DEFAULTS doesn't
    """
    if not isinstance(config, dict):
        raise ConfigError(f"{source}: expected an object of sections")
    for section, values in config.items():
        if section not in DEFAULTS:
            raise ConfigError(f"{source}: unknown section {section!r}")
        if not isinstance(values, dict):
            raise ConfigError(f"{source}: section {section!r} must be an object")
        unknown = set(values) - set(DEFAULTS[section])
        if unknown:
            raise ConfigError(
                f"{source}: unknown keys in {section!r}: {', '.join(sorted(unknown))}"
            )


def load_config(path):
    """
    Read and validate a JSON config file.

    :raises ConfigError: if the file is unreadable, not JSON or has
        unknown keys
    """
    try:
        with open(path, "r") as f:
            config = json.load(f)
    except OSError as e:
        raise ConfigError(f"Cannot read config {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigError(f"Config {path} is not valid JSON: {e}") from e
    check_keys(config, path)
    return config


def merge(*layers):
    """Merge config layers left to right; later layers win per key"""
    merged = copy.deepcopy(DEFAULTS)
    for layer in layers:
        for section, values in (layer or {}).items():
            merged[section].update(copy.deepcopy(values))
    return merged


def positive_int(value, name):
    try:
        ok = not isinstance(value, bool) and int(value) == value and value >= 1
    except (TypeError, ValueError):
        ok = False
    if not ok:
        raise ConfigError(f"{name} must be a positive integer, got {value}")
    return int(value)


def nonempty(values, name):
    if not values:
        raise ConfigError(f"{name} must list at least one value")
    return list(values)
