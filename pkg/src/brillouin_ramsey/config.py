"""Flat key/value configuration: parsing, validation, and spec assembly.

Configuration files are plain text, one ``key = value`` per line, with ``#``
comments. Every numeric key carries an explicit unit suffix (``_mhz`` for
ordinary frequencies omega/2pi, ``_us`` for times, ``_mw`` for powers);
unsuffixed numeric keys do not exist, because the 2pi convention is the
likeliest source of silent error in this domain. Parse errors name the
offending key and line.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import IntegratorConfig
from .errors import ConfigError
from .experiment import AXIS2_NAMES, Axis, Engine, SweepSpec
from .model import (
    MHZ,
    ConfigMode,
    PhysicalParams,
    PulseSchedule,
    Regime,
    drive_strength_from_power,
)

# key -> expected type; "floatlist" keys accept comma-separated values
KNOWN_KEYS: dict[str, str] = {
    "regime": "str",
    "engine": "str",
    "mode": "str",
    "kind": "str",
    "axis2": "str",
    "omega_m_mhz": "float",
    "delta_a_mhz": "float",
    "delta_c_mhz": "float",
    "g_mhz": "float",
    "kappa_a_mhz": "float",
    "kappa_c_mhz": "float",
    "gamma_m_mhz": "float",
    "coupling_mhz": "float",
    "eps_control_mhz": "float",
    "eps_probe_mhz": "float",
    "power_control_mw": "float",
    "power_probe_mw": "float",
    "omega_la_mhz": "float",
    "omega_lc_mhz": "float",
    "tau1_us": "float",
    "t_free_us": "float",
    "tau2_us": "float",
    "omega_x_mhz": "float",
    "omega_x_min_mhz": "float",
    "omega_x_max_mhz": "float",
    "omega_x_count": "int",
    "axis2_min_mhz": "float",
    "axis2_max_mhz": "float",
    "axis2_min_us": "float",
    "axis2_max_us": "float",
    "axis2_count": "int",
    "axis2_values": "floatlist",
    "dt_us": "float",
    "sample_stride": "int",
}

_STR_CHOICES = {
    "regime": {"rwa", "anti_rwa"},
    "engine": {"analytic", "ode", "nonlinear"},
    "mode": {"effective", "microscopic"},
    "kind": {"fringe", "visibility"},
    "axis2": set(AXIS2_NAMES),
}

_DEFAULTS = {
    "kind": "fringe",
    "engine": "analytic",
    "delta_a_mhz": 0.0,
    "delta_c_mhz": 0.0,
    "g_mhz": 0.0,
    "eps_control_mhz": 0.0,
    "omega_x_mhz": 0.0,
    "omega_x_min_mhz": -1.0,
    "omega_x_max_mhz": 1.0,
    "omega_x_count": 401,
    "dt_us": 1e-4,
    "sample_stride": 50,
}

_REQUIRED = ("regime", "kappa_a_mhz", "kappa_c_mhz", "gamma_m_mhz",
             "tau1_us", "t_free_us", "tau2_us")


def _coerce(key: str, value, line: int | None = None):
    if key not in KNOWN_KEYS:
        raise ConfigError("unknown key", key=key, line=line)
    want = KNOWN_KEYS[key]
    try:
        if want == "float":
            return float(value)
        if want == "int":
            if isinstance(value, float) and not value.is_integer():
                raise ValueError(value)
            return int(value)
        if want == "floatlist":
            if isinstance(value, (list, tuple)):
                return [float(v) for v in value]
            return [float(v) for v in str(value).split(",") if v.strip()]
        value = str(value).strip().lower()
        if value not in _STR_CHOICES[key]:
            raise ConfigError(
                f"must be one of {sorted(_STR_CHOICES[key])}, got '{value}'",
                key=key, line=line,
            )
        return value
    except (TypeError, ValueError):
        raise ConfigError(f"cannot parse value '{value}' as {want}", key=key, line=line) from None


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into a validated raw-config dict."""
    raw: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"expected 'key = value', got '{stripped}'", line=lineno)
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key in raw:
            raise ConfigError("duplicate key", key=key, line=lineno)
        raw[key] = _coerce(key, value, line=lineno)
    return raw


def parse_config_file(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read())


def apply_overrides(raw: dict, overrides: list[str]) -> dict:
    """Apply ``key=value`` override strings on top of a raw config."""
    out = dict(raw)
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override must look like key=value, got '{item}'")
        key, value = (part.strip() for part in item.split("=", 1))
        out[key] = _coerce(key, value)
    return out


@dataclass(frozen=True)
class ResolvedConfig:
    """A raw config resolved into typed objects (internal rad/us units)."""

    spec: SweepSpec
    kind: str
    omega_x_base: float           # rad/us, for single-point runs
    raw: dict = field(repr=False, default_factory=dict)


def _probe_control_drives(raw: dict, regime: Regime, params: PhysicalParams):
    """Resolve drive strengths, from _mhz keys or from power keys."""
    if regime is Regime.RWA:
        probe_kappa, probe_laser = params.kappa_c, "omega_lc_mhz"
        ctrl_kappa, ctrl_laser = params.kappa_a, "omega_la_mhz"
    else:
        probe_kappa, probe_laser = params.kappa_a, "omega_la_mhz"
        ctrl_kappa, ctrl_laser = params.kappa_c, "omega_lc_mhz"

    def resolve(role: str, kappa: float, laser_key: str, default=None) -> float:
        eps_key, power_key = f"eps_{role}_mhz", f"power_{role}_mw"
        if eps_key in raw and power_key in raw:
            raise ConfigError(f"give either {eps_key} or {power_key}, not both", key=power_key)
        if power_key in raw:
            if laser_key not in raw:
                raise ConfigError(f"{power_key} needs {laser_key}", key=laser_key)
            omega_l = raw[laser_key] * 1e6 * MHZ  # rad/s
            return drive_strength_from_power(raw[power_key] * 1e-3, kappa, omega_l)
        if eps_key in raw:
            return raw[eps_key] * MHZ
        if default is not None:
            return default
        raise ConfigError(f"missing required key (or {power_key})", key=eps_key)

    eps_probe = resolve("probe", probe_kappa, probe_laser)
    eps_control = resolve("control", ctrl_kappa, ctrl_laser, default=0.0)
    return eps_probe, eps_control


def _build_axis2(raw: dict) -> Axis | None:
    name = raw.get("axis2")
    if name is None:
        for key in ("axis2_values", "axis2_count", "axis2_min_mhz", "axis2_min_us"):
            if key in raw:
                raise ConfigError("axis2 must be named before axis2_* keys", key=key)
        return None
    unit = AXIS2_NAMES[name]
    scale = MHZ if unit == "mhz" else 1.0
    wrong = "us" if unit == "mhz" else "mhz"
    for key in (f"axis2_min_{wrong}", f"axis2_max_{wrong}"):
        if key in raw:
            raise ConfigError(f"axis2 '{name}' takes _{unit} bounds", key=key)
    if "axis2_values" in raw:
        return Axis(name, np.asarray(raw["axis2_values"], dtype=float) * scale)
    try:
        lo = raw[f"axis2_min_{unit}"]
        hi = raw[f"axis2_max_{unit}"]
        count = raw["axis2_count"]
    except KeyError as err:
        raise ConfigError("missing axis2 bound", key=str(err.args[0])) from None
    return Axis.linspace(name, lo * scale, hi * scale, count)


def build(raw: dict) -> ResolvedConfig:
    """Resolve a raw config dict into a runnable :class:`ResolvedConfig`."""
    merged = dict(_DEFAULTS)
    merged.update(raw)
    for key in _REQUIRED:
        if key not in merged:
            raise ConfigError("missing required key", key=key)

    regime = Regime(merged["regime"])
    engine = Engine(merged["engine"])

    params_kwargs = dict(
        kappa_a=merged["kappa_a_mhz"] * MHZ,
        kappa_c=merged["kappa_c_mhz"] * MHZ,
        gamma_m=merged["gamma_m_mhz"] * MHZ,
        g=merged["g_mhz"] * MHZ,
        delta_a=merged["delta_a_mhz"] * MHZ,
        delta_c=merged["delta_c_mhz"] * MHZ,
    )
    if "omega_m_mhz" in merged:
        params_kwargs["omega_m"] = merged["omega_m_mhz"] * MHZ
    try:
        params = PhysicalParams(**params_kwargs)
    except ValueError as err:
        raise ConfigError(str(err)) from None

    eps_probe, eps_control = _probe_control_drives(merged, regime, params)
    try:
        schedule = PulseSchedule(
            tau1=merged["tau1_us"], t_free=merged["t_free_us"], tau2=merged["tau2_us"],
            eps_probe=eps_probe, eps_control=eps_control,
        )
    except ValueError as err:
        raise ConfigError(str(err)) from None

    coupling = merged["coupling_mhz"] * MHZ if "coupling_mhz" in merged else None
    if "mode" in merged:
        mode = ConfigMode(merged["mode"])
    else:
        mode = ConfigMode.EFFECTIVE if coupling is not None else ConfigMode.MICROSCOPIC
    if mode is ConfigMode.EFFECTIVE and coupling is None:
        raise ConfigError("effective mode requires a coupling", key="coupling_mhz")

    axis1 = Axis.linspace(
        "omega_x",
        merged["omega_x_min_mhz"] * MHZ,
        merged["omega_x_max_mhz"] * MHZ,
        merged["omega_x_count"],
    )
    axis2 = _build_axis2(merged)
    integrator = IntegratorConfig(dt=merged["dt_us"], sample_stride=merged["sample_stride"])

    spec = SweepSpec(
        regime=regime, engine=engine, params=params, schedule=schedule,
        integrator=integrator, axis1=axis1, axis2=axis2,
        coupling=coupling, mode=mode,
    )
    return ResolvedConfig(
        spec=spec, kind=merged["kind"],
        omega_x_base=merged["omega_x_mhz"] * MHZ, raw=dict(merged),
    )
