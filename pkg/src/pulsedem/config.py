"""Scenario configuration: flat INI files with per-scenario sections.

Every tunable has a default below; a config file may override any subset.
Unknown sections, unknown keys, values of the wrong type, and values
outside their validated range all raise ConfigError, so a run is either
fully described by (defaults + file + CLI flags) or refuses to start.
"""

from __future__ import annotations

import configparser
import copy
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError

DEFAULTS = {
    "common": {
        "alpha": 7.2973525693e-3,
        "tau_prime": 1.0,
        "seed": 20260819,
        "figures": True,
    },
    "calibrate": {
        "residual_tol": 1e-10,
        "max_exponent": 10.0,
        "n_profile_samples": 257,
    },
    "particle": {
        "n_radii": 50,
        "r_min": 0.5,
        "r_max": 10.0,
        "quadrature_rel_tol": 1e-6,
        "tiling_rel_tol": 1e-10,
        "gradient_rel_tol": 1e-8,
        "boost_speed": 0.6,
        "n_lorenz_points": 20,
        "lorenz_tol": 1e-6,
        "probe_radius": 1.3,
        "n_recovery_phases": 256,
        "n_gradient_points": 5,
        "n_field_samples": 128,
    },
    "maxwell": {
        "n_events": 20,
        "fd_step": 1e-3,
        "order_tol": 0.2,
        "boost_speed_mid": 0.6,
        "boost_speed_high": 0.9,
        "invariance_rel_tol": 1e-8,
    },
    "conservation": {
        "n_events": 20,
        "n_boosted": 8,
        "fd_step": 1e-3,
        "order_tol": 0.2,
        "boost_speed": 0.6,
    },
    "energy": {
        "quantum_rel_tol": 1e-3,
        "flux_rel_tol": 1e-4,
        "n_flux_radii": 9,
        "train_pulses": 3,
    },
    "solenoid": {
        "radius": 0.5,
        "length": 50.0,
        "sigma": 1.5915494309189535,
        "v_drift": 0.05,
        "n_phi": 64,
        "n_z_panels": 100,
        "z_order": 12,
        "fd_step": 1e-3,
        "n_correspondence_points": 10,
        "correspondence_rel_tol": 1e-3,
        "n_causality_points": 10,
        "causality_tol": 1e-12,
        "exterior_ratio_tol": 1e-3,
        "ampere_rel_tol": 1e-2,
        "n_wave_samples": 128,
    },
    "ab-loops": {
        "r_inner": 1.0,
        "r_outer": 2.5,
        "circulation_rel_tol": 1e-2,
        "n_loop_radii": 4,
        "wave_contrast_min": 0.05,
    },
}

# (section, key) -> (predicate, requirement description)
_VALIDATORS = {
    ("common", "alpha"): (lambda v: 0.0 < v <= 0.1, "in (0, 0.1]"),
    ("common", "tau_prime"): (lambda v: v > 0.0, "positive"),
    ("common", "seed"): (lambda v: v >= 0, "nonnegative"),
    ("calibrate", "max_exponent"): (lambda v: 1.0 < v <= 50.0, "in (1, 50]"),
    ("particle", "r_min"): (lambda v: v > 0.0, "positive"),
    ("particle", "boost_speed"): (lambda v: 0.0 < v < 1.0, "in (0, 1)"),
    ("maxwell", "boost_speed_mid"): (lambda v: 0.0 < v < 1.0, "in (0, 1)"),
    ("maxwell", "boost_speed_high"): (lambda v: 0.0 < v < 1.0, "in (0, 1)"),
    ("conservation", "boost_speed"): (lambda v: 0.0 < v < 1.0, "in (0, 1)"),
    ("solenoid", "radius"): (lambda v: v > 0.0, "positive"),
    ("solenoid", "length"): (lambda v: v > 0.0, "positive"),
    ("solenoid", "v_drift"): (lambda v: 0.0 < v < 1.0, "in (0, 1)"),
    ("ab-loops", "r_inner"): (lambda v: v > 0.0, "positive"),
}


@dataclass
class ScenarioConfig:
    """Resolved run description: which scenario, where to write, and all
    numeric parameters by section."""

    scenario: str
    out_dir: Path
    seed: int
    figures: bool
    params: dict = field(default_factory=dict)

    def section(self, name: str) -> dict:
        return self.params[name]


def _convert(section: str, key: str, raw: str, default):
    kind = type(default)
    try:
        if kind is bool:
            lowered = raw.strip().lower()
            if lowered in ("1", "true", "yes", "on"):
                return True
            if lowered in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind is int:
            return int(raw)
        if kind is float:
            value = float(raw)
            if not math.isfinite(value):
                raise ValueError(raw)
            return value
        return raw
    except ValueError:
        raise ConfigError(
            f"[{section}] {key}: cannot parse {raw!r} as {kind.__name__}") from None


def _validate(params: dict) -> None:
    for (section, key), (pred, need) in _VALIDATORS.items():
        value = params[section][key]
        if not pred(value):
            raise ConfigError(f"[{section}] {key} = {value!r} must be {need}")
    for section, table in params.items():
        for key, value in table.items():
            if isinstance(value, int) and key.startswith("n_") and value < 1:
                raise ConfigError(f"[{section}] {key} must be at least 1")
            if isinstance(value, float) and (key.endswith("_tol") or key.endswith("tol")):
                if value < 0.0:
                    raise ConfigError(f"[{section}] {key} must be nonnegative")
    if params["particle"]["r_min"] >= params["particle"]["r_max"]:
        raise ConfigError("[particle] requires r_min < r_max")
    if params["ab-loops"]["r_inner"] >= params["ab-loops"]["r_outer"]:
        raise ConfigError("[ab-loops] requires r_inner < r_outer")


def load_params(path=None) -> dict:
    """Defaults merged with an optional INI file, validated."""
    params = copy.deepcopy(DEFAULTS)
    if path is not None:
        file_path = Path(path)
        if not file_path.is_file():
            raise ConfigError(f"config file not found: {file_path}")
        parser = configparser.ConfigParser(interpolation=None)
        try:
            parser.read_string(file_path.read_text(encoding="utf-8"), source=str(file_path))
        except (configparser.Error, UnicodeDecodeError) as exc:
            raise ConfigError(f"config file unreadable: {exc}") from None
        if parser.defaults():
            raise ConfigError("a [DEFAULT] section is not supported")
        for section in parser.sections():
            if section not in params:
                raise ConfigError(f"unknown config section [{section}]")
            for key, raw in parser.items(section):
                if key not in params[section]:
                    raise ConfigError(f"unknown key {key!r} in section [{section}]")
                params[section][key] = _convert(section, key, raw, DEFAULTS[section][key])
    _validate(params)
    return params
