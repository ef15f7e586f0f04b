"""Parameter sweeps, fringe metrics, and engine cross-validation.

A sweep evaluates |out_field| at the end of the pulse sequence over a grid of
the swept phonon detuning omega_x (axis 1), optionally crossed with a second
parameter axis (decay rate, coupling, or one of the schedule times). Grid
points are independent; results are assembled in row-major (axis2, axis1)
order and do not depend on evaluation order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace, field

import numpy as np

from . import analytic, dynamics
from .errors import ConfigError
from .model import (
    ConfigMode,
    DerivedParams,
    PhysicalParams,
    PulseSchedule,
    Regime,
    derive,
)


class Engine(enum.Enum):
    ANALYTIC = "analytic"
    LINEAR_ODE = "ode"
    NONLINEAR_ODE = "nonlinear"


#: parameters accepted as a second sweep axis, with their unit suffix
AXIS2_NAMES = {
    "kappa": "mhz",
    "coupling": "mhz",
    "tau1": "us",
    "t_free": "us",
    "tau2": "us",
}


@dataclass(frozen=True)
class Axis:
    """A named sweep axis with explicit grid values (internal units)."""

    name: str
    values: np.ndarray

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, count: int) -> "Axis":
        if count < 2:
            raise ConfigError(f"axis '{name}' needs at least 2 points")
        if not (np.isfinite(lo) and np.isfinite(hi)):
            raise ConfigError(f"axis '{name}' range must be finite")
        return cls(name, np.linspace(lo, hi, count))

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if values.size < 2:
            raise ConfigError(f"axis '{self.name}' needs at least 2 points")
        if not np.all(np.isfinite(values)):
            raise ConfigError(f"axis '{self.name}' values must be finite")


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to evaluate a fringe sweep with a chosen engine."""

    regime: Regime
    engine: Engine
    params: PhysicalParams
    schedule: PulseSchedule
    integrator: dynamics.IntegratorConfig
    axis1: Axis
    axis2: Axis | None = None
    coupling: float | None = None      # effective |G|; None in microscopic mode
    mode: ConfigMode = ConfigMode.EFFECTIVE
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.axis1.name != "omega_x":
            raise ConfigError("axis1 must sweep omega_x")
        if self.axis2 is not None and self.axis2.name not in AXIS2_NAMES:
            raise ConfigError(
                f"unknown axis2 '{self.axis2.name}'; expected one of {sorted(AXIS2_NAMES)}"
            )
        if self.engine is Engine.NONLINEAR_ODE and self.mode is not ConfigMode.MICROSCOPIC:
            raise ConfigError("the nonlinear engine requires a microscopic configuration")


@dataclass
class FringeTrace:
    """One fringe: swept axis values with |out_field| per point."""

    axis: Axis
    signal: np.ndarray
    meta: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.signal)


@dataclass
class FringeGrid:
    """Row-major fringe grid: signal[i, j] at (axis2[i], axis1[j])."""

    axis1: Axis
    axis2: Axis
    signal: np.ndarray
    meta: dict = field(default_factory=dict)

    def row(self, i: int) -> FringeTrace:
        meta = dict(self.meta)
        meta[self.axis2.name] = float(self.axis2.values[i])
        return FringeTrace(axis=self.axis1, signal=self.signal[i], meta=meta)


def _apply_axis2(spec: SweepSpec, value: float):
    """Return (params, schedule, coupling) with one axis-2 value applied."""
    params, schedule, coupling = spec.params, spec.schedule, spec.coupling
    if spec.axis2 is None:
        return params, schedule, coupling
    name = spec.axis2.name
    if name == "kappa":
        params = replace(params, kappa_a=value, kappa_c=value)
    elif name == "coupling":
        coupling = value
    else:
        schedule = replace(schedule, **{name: value})
    return params, schedule, coupling


def _eval_row(spec: SweepSpec, params, schedule, coupling, omega_x: np.ndarray) -> np.ndarray:
    dp = derive(
        params, schedule, spec.regime,
        omega_x=omega_x, coupling=coupling, mode=spec.mode,
    )
    if spec.engine is Engine.ANALYTIC:
        out = analytic.fringe_point(dp, schedule).out_field
    elif spec.engine is Engine.LINEAR_ODE:
        _, _, out = dynamics.linear_final_states(dp, schedule, spec.integrator)
    else:
        _, _, _, out = dynamics.nonlinear_final_states(
            params, schedule, spec.regime, spec.integrator, omega_x
        )
    return np.abs(np.atleast_1d(out))


def sweep(spec: SweepSpec) -> FringeTrace | FringeGrid:
    """Evaluate the configured engine over the sweep grid."""
    wx = spec.axis1.values
    if spec.axis2 is None:
        signal = _eval_row(spec, spec.params, spec.schedule, spec.coupling, wx)
        return FringeTrace(axis=spec.axis1, signal=signal, meta=dict(spec.meta))
    rows = []
    for value in spec.axis2.values:
        params, schedule, coupling = _apply_axis2(spec, float(value))
        rows.append(_eval_row(spec, params, schedule, coupling, wx))
    return FringeGrid(
        axis1=spec.axis1, axis2=spec.axis2, signal=np.vstack(rows), meta=dict(spec.meta)
    )


def _signal_of(trace) -> np.ndarray:
    return np.asarray(trace.signal if hasattr(trace, "signal") else trace, dtype=float)


def visibility(trace) -> float:
    """(max - min)/(max + min) of the fringe signal; in [0, 1]."""
    y = _signal_of(trace)
    if y.size == 0:
        raise ValueError("visibility of an empty trace")
    hi, lo = float(np.max(y)), float(np.min(y))
    if hi + lo <= 0:
        raise ValueError("visibility undefined: trace max + min is not positive")
    return (hi - lo) / (hi + lo)


def fringe_strength(trace) -> float:
    """Peak-to-peak fringe signal, max - min over the trace."""
    y = _signal_of(trace)
    if y.size == 0:
        raise ValueError("fringe_strength of an empty trace")
    return float(np.max(y) - np.min(y))


@dataclass(frozen=True)
class Extremum:
    position: float   # axis value, parabolic sub-grid refinement applied
    kind: str         # "min" or "max"
    value: float      # signal at the grid sample


def locate_extrema(trace, axis_values=None) -> list[Extremum]:
    """Interior strict local extrema by 3-point comparison.

    Positions are refined by fitting a parabola through the extremal sample
    and its neighbours; endpoints are never reported.
    """
    y = _signal_of(trace)
    if axis_values is None:
        axis_values = trace.axis.values
    x = np.asarray(axis_values, dtype=float)
    if y.size < 3:
        raise ValueError("locate_extrema needs at least 3 samples")
    out: list[Extremum] = []
    for i in range(1, y.size - 1):
        if y[i] > y[i - 1] and y[i] > y[i + 1]:
            kind = "max"
        elif y[i] < y[i - 1] and y[i] < y[i + 1]:
            kind = "min"
        else:
            continue
        denom = y[i - 1] - 2.0 * y[i] + y[i + 1]
        shift = 0.0 if denom == 0 else 0.5 * (y[i - 1] - y[i + 1]) / denom
        step = 0.5 * (x[i + 1] - x[i - 1])
        out.append(Extremum(position=float(x[i] + shift * step), kind=kind, value=float(y[i])))
    return out


@dataclass(frozen=True)
class EngineComparison:
    engines: tuple[Engine, Engine]
    deviations: np.ndarray    # per-point |s1 - s2| / max(s_ref)
    linf: float
    tolerance: float
    passed: bool


def compare_engines(
    spec: SweepSpec,
    engines: tuple[Engine, Engine] | None = None,
    tolerance: float = 0.05,
) -> EngineComparison:
    """Run two engines on the same grid and compare |out_field| point-wise.

    Deviations are normalized by the maximum of the second engine's signal
    (the reference, by convention the more faithful model). Defaults to
    analytic vs linear ODE; for a nonlinear spec, linear vs nonlinear.
    """
    if engines is None:
        if spec.engine is Engine.NONLINEAR_ODE:
            engines = (Engine.LINEAR_ODE, Engine.NONLINEAR_ODE)
        else:
            engines = (Engine.ANALYTIC, Engine.LINEAR_ODE)
    res = []
    for engine in engines:
        result = sweep(replace(spec, engine=engine))
        res.append(np.ravel(result.signal))
    scale = float(np.max(res[1]))
    if scale <= 0:
        scale = 1.0
    dev = np.abs(res[0] - res[1]) / scale
    linf = float(np.max(dev))
    return EngineComparison(
        engines=engines, deviations=dev, linf=linf,
        tolerance=tolerance, passed=linf <= tolerance,
    )


@dataclass
class VisibilityCurve:
    """Fringe visibility of both regimes versus the optical decay rate."""

    kappa: np.ndarray          # rad/us
    visibility_rwa: np.ndarray
    visibility_arwa: np.ndarray
    meta: dict = field(default_factory=dict)


def visibility_curve(spec: SweepSpec, kappa_values: np.ndarray) -> VisibilityCurve:
    """Visibility of the omega_x fringe at each kappa, for both regimes.

    ``spec`` supplies everything except regime and kappa; both optical decay
    rates are set equal to the swept value.
    """
    vis = {Regime.RWA: [], Regime.ANTI_RWA: []}
    for kappa in kappa_values:
        params = replace(spec.params, kappa_a=float(kappa), kappa_c=float(kappa))
        for regime in (Regime.RWA, Regime.ANTI_RWA):
            row_spec = replace(spec, params=params, regime=regime, axis2=None)
            vis[regime].append(visibility(sweep(row_spec)))
    return VisibilityCurve(
        kappa=np.asarray(kappa_values, dtype=float),
        visibility_rwa=np.array(vis[Regime.RWA]),
        visibility_arwa=np.array(vis[Regime.ANTI_RWA]),
        meta=dict(spec.meta),
    )
