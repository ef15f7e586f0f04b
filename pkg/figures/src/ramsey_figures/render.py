"""Render fringe-sweep CSV artifacts to figure files.

Consumes only the documented CSV contract of the simulation CLI: a leading
``# meta: {json}`` line, a header row, and comma-separated numeric rows.
There is no in-process coupling with the simulation package.

Figure kinds:

* ``fig3``  - fringe curves vs omega_x, one curve per schedule-time value
              (grid CSV with a tau1_us / t_free_us / tau2_us second column);
              one panel per input CSV
* ``fig4``  - fringe curves vs omega_x, one curve per kappa value
              (grid CSV with a kappa_mhz second column)
* ``fig4c`` - visibility of both regimes vs kappa (visibility CSV)
* ``fig5``  - fringe map over (omega_x, coupling) (grid CSV with a
              coupling_mhz second column)

Usage: ``ramsey-render <kind> <csv...> -o <image>``. Inputs are never
modified; reruns overwrite the output deterministically. Exit codes: 0 on
success, 2 on any error (single-line diagnostic, no file written).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

META_PREFIX = "# meta: "

KINDS = ("fig3", "fig4", "fig4c", "fig5")

# expected second-axis column per figure kind
_AXIS2_FOR_KIND = {
    "fig3": ("tau1_us", "t_free_us", "tau2_us"),
    "fig4": ("kappa_mhz",),
    "fig5": ("coupling_mhz",),
}

_AXIS2_LABEL = {
    "tau1_us": r"$\tau_1$ ($\mu$s)",
    "t_free_us": r"$T$ ($\mu$s)",
    "tau2_us": r"$\tau_2$ ($\mu$s)",
    "kappa_mhz": r"$\kappa/2\pi$ (MHz)",
    "coupling_mhz": r"$|G|/2\pi$ (MHz)",
}

_OMEGA_LABEL = r"$\omega_x/2\pi$ (MHz)"
_SIGNAL_LABEL = r"$|\varepsilon_{\rm out}|$ (arb. units)"


class RenderError(RuntimeError):
    """Unusable input artifact (wrong columns, empty data, bad meta)."""


@dataclass(frozen=True)
class FigureJob:
    kind: str
    csv_paths: tuple[str, ...]
    out_path: str

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise RenderError(f"unknown figure kind '{self.kind}'; expected one of {KINDS}")
        if not self.csv_paths:
            raise RenderError("at least one input CSV is required")


def read_artifact(path) -> tuple[dict, list[str], np.ndarray]:
    """Parse one CSV artifact into (meta, header, column-major data)."""
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
                    raise RenderError(f"{path}: bad meta block ({err})") from None
                continue
            if line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append([float(v) for v in line.split(",")])
    if meta is None or header is None:
        raise RenderError(f"{path}: not a sweep artifact (missing meta or header)")
    if not rows:
        raise RenderError(f"{path}: no data rows")
    return meta, header, np.asarray(rows, dtype=float).T


def _check_grid(path, header: list[str], kind: str) -> str:
    expected = _AXIS2_FOR_KIND[kind]
    if len(header) != 3 or header[0] != "omega_x_mhz" or header[2] != "signal":
        raise RenderError(
            f"{path}: {kind} expects columns omega_x_mhz,<axis2>,signal; got {header}"
        )
    if header[1] not in expected:
        raise RenderError(
            f"{path}: {kind} expects a second axis in {expected}; got '{header[1]}'"
        )
    return header[1]


def _split_rows(data: np.ndarray):
    """Split flattened row-major grid columns into per-axis2-value traces."""
    wx, ax2, signal = data
    values = list(dict.fromkeys(ax2))  # preserves row-major order
    for v in values:
        mask = ax2 == v
        yield v, wx[mask], signal[mask]


def _render_fringe_panels(job: FigureJob, axes_label_key: str | None = None):
    n = len(job.csv_paths)
    fig, axes = plt.subplots(1, n, figsize=(5.2 * n, 3.6), squeeze=False)
    for ax, path in zip(axes[0], job.csv_paths):
        _, header, data = read_artifact(path)
        axis2 = _check_grid(path, header, job.kind)
        label = _AXIS2_LABEL[axis2]
        for v, wx, signal in _split_rows(data):
            ax.plot(wx, signal, lw=1.2, label=f"{label.split(' ')[0]} = {v:g}")
        ax.set_xlabel(_OMEGA_LABEL)
        ax.set_ylabel(_SIGNAL_LABEL)
        ax.grid(True, linestyle=":", alpha=0.6)
        ax.legend(fontsize=8)
    return fig


def _render_fig4c(job: FigureJob):
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for path in job.csv_paths:
        _, header, data = read_artifact(path)
        if header != ["kappa_mhz", "visibility_rwa", "visibility_arwa"]:
            raise RenderError(
                f"{path}: fig4c expects kappa_mhz,visibility_rwa,visibility_arwa; got {header}"
            )
        kappa, v_rwa, v_arwa = data
        ax.plot(kappa, v_rwa, "o-", lw=1.2, label="rwa")
        ax.plot(kappa, v_arwa, "s-", lw=1.2, label="anti_rwa")
    ax.set_xlabel(_AXIS2_LABEL["kappa_mhz"])
    ax.set_ylabel("Visibility")
    ax.set_ylim(0, 1)
    ax.grid(True, linestyle=":", alpha=0.6)
    ax.legend()
    return fig


def _render_fig5(job: FigureJob):
    n = len(job.csv_paths)
    fig, axes = plt.subplots(1, n, figsize=(5.6 * n, 3.8), squeeze=False)
    for ax, path in zip(axes[0], job.csv_paths):
        _, header, data = read_artifact(path)
        _check_grid(path, header, job.kind)
        rows = list(_split_rows(data))
        couplings = np.array([v for v, _, _ in rows])
        wx = rows[0][1]
        grid = np.vstack([signal for _, _, signal in rows])
        mesh = ax.pcolormesh(wx, couplings, grid, shading="nearest", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label=_SIGNAL_LABEL)
        ax.set_xlabel(_OMEGA_LABEL)
        ax.set_ylabel(_AXIS2_LABEL["coupling_mhz"])
    return fig


def render(job: FigureJob) -> str:
    """Render the job to its output path; returns the path written."""
    if job.kind == "fig4c":
        fig = _render_fig4c(job)
    elif job.kind == "fig5":
        fig = _render_fig5(job)
    else:
        fig = _render_fringe_panels(job)
    fig.tight_layout()
    fig.savefig(job.out_path, dpi=150)
    plt.close(fig)
    return job.out_path


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="ramsey-render",
        description="Render fringe-sweep CSV artifacts to figure files.",
    )
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("csv", nargs="+", help="input CSV artifact(s)")
    parser.add_argument("-o", "--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        job = FigureJob(kind=args.kind, csv_paths=tuple(args.csv), out_path=args.out)
        render(job)
    except (RenderError, OSError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
