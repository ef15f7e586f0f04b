"""CSV artifacts with an embedded reproducibility meta block.

Every file starts with a single ``# meta: {...}`` comment line holding the
fully resolved run configuration as canonical JSON (sorted keys, no
whitespace), followed by a mandatory header row. Floats are written with
``repr``, the shortest representation that round-trips exactly, so identical
requests produce byte-identical files.

Axis columns are in user units (``*_mhz`` meaning omega/2pi in MHz, ``*_us``
in microseconds); the fringe ``signal`` column is |out_field| in the internal
rad/us convention and is treated as arbitrary units downstream.
"""

from __future__ import annotations

import json

import numpy as np

from .dynamics import ModeTrace
from .errors import ConfigError
from .experiment import AXIS2_NAMES, FringeGrid, FringeTrace, VisibilityCurve
from .model import MHZ

META_PREFIX = "# meta: "


def _meta_line(meta: dict) -> str:
    return META_PREFIX + json.dumps(meta, sort_keys=True, separators=(",", ":"))


def _fmt(x: float) -> str:
    return repr(float(x))


def _axis_column(name: str) -> tuple[str, float]:
    """(column name, divisor from internal units) for an axis."""
    if name == "omega_x" or AXIS2_NAMES.get(name) == "mhz":
        return f"{name}_mhz", MHZ
    return f"{name}_us", 1.0


def write_fringe_csv(path, trace: FringeTrace, meta: dict) -> None:
    col, div = _axis_column(trace.axis.name)
    lines = [_meta_line(meta), f"{col},signal"]
    for x, s in zip(trace.axis.values, trace.signal):
        lines.append(f"{_fmt(x / div)},{_fmt(s)}")
    _write(path, lines)


def write_grid_csv(path, grid: FringeGrid, meta: dict) -> None:
    col1, div1 = _axis_column(grid.axis1.name)
    col2, div2 = _axis_column(grid.axis2.name)
    lines = [_meta_line(meta), f"{col1},{col2},signal"]
    for i, v2 in enumerate(grid.axis2.values):
        for j, v1 in enumerate(grid.axis1.values):
            lines.append(f"{_fmt(v1 / div1)},{_fmt(v2 / div2)},{_fmt(grid.signal[i, j])}")
    _write(path, lines)


def write_visibility_csv(path, curve: VisibilityCurve, meta: dict) -> None:
    lines = [_meta_line(meta), "kappa_mhz,visibility_rwa,visibility_arwa"]
    for k, vr, vb in zip(curve.kappa, curve.visibility_rwa, curve.visibility_arwa):
        lines.append(f"{_fmt(k / MHZ)},{_fmt(vr)},{_fmt(vb)}")
    _write(path, lines)


def write_trace_csv(path, trace: ModeTrace, meta: dict) -> None:
    header = ["time_us"]
    for name in trace.mode_names:
        header += [f"re_{name}", f"im_{name}"]
    header += ["re_out", "im_out"]
    lines = [_meta_line(meta), ",".join(header)]
    for i, t in enumerate(trace.times):
        row = [_fmt(t)]
        for k in range(len(trace.mode_names)):
            row += [_fmt(trace.amps[k, i].real), _fmt(trace.amps[k, i].imag)]
        row += [_fmt(trace.out_field[i].real), _fmt(trace.out_field[i].imag)]
        lines.append(",".join(row))
    _write(path, lines)


def _write(path, lines: list[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_csv(path) -> tuple[dict, list[str], np.ndarray]:
    """Read back a CSV artifact: (meta dict, column names, data columns).

    The returned array has one row per column name. Raises ConfigError when
    the meta block is missing or unparseable.
    """
    meta = None
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith(META_PREFIX):
                try:
                    meta = json.loads(line[len(META_PREFIX):])
                except json.JSONDecodeError as err:
                    raise ConfigError(f"bad meta block: {err}") from None
                continue
            if line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if meta is None:
        raise ConfigError(f"{path}: missing '# meta:' block")
    if header is None:
        raise ConfigError(f"{path}: missing header row")
    data = np.array(rows, dtype=float).T if rows else np.empty((len(header), 0))
    return meta, header, data
