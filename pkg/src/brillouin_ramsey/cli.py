"""Command-line entry point.

Subcommands: ``fringe`` (one-axis fringe CSV), ``sweep2d`` (two-axis grid
CSV), ``trace`` (time-domain CSV of one sequence), ``validate`` (engine
cross-checks plus step-size convergence, nonzero exit if any tolerance
fails), and ``presets`` (list bundled presets).

Exit codes: 0 success, 1 validation tolerance failure, 2 configuration or
usage error (single-line diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field, replace

from . import __version__
from .config import ResolvedConfig, apply_overrides, build, parse_config_file
from .csvio import (
    write_fringe_csv,
    write_grid_csv,
    write_trace_csv,
    write_visibility_csv,
)
from .dynamics import CONVERGENCE_THRESHOLD, convergence_check, evolve_linear, evolve_nonlinear
from .errors import ConfigError, StabilityError
from .experiment import Engine, compare_engines, sweep, visibility_curve
from .model import ConfigMode, derive
from .presets import DESCRIPTIONS, get_preset, preset_names

ANALYTIC_VS_ODE_TOL = 0.05
LINEAR_VS_NONLINEAR_TOL = 0.02


@dataclass
class RunRequest:
    subcommand: str
    config_path: str | None = None
    preset: str | None = None
    out_path: str | None = None
    overrides: list[str] = field(default_factory=list)
    engine: str | None = None
    dt_us: float | None = None
    config_inline: dict | None = None  # pre-resolved raw config (meta round-trips)


def _resolve(request: RunRequest) -> ResolvedConfig:
    if request.preset and request.config_path:
        raise ConfigError("give either --preset or --config, not both")
    if request.config_inline is not None:
        raw = dict(request.config_inline)
    elif request.preset:
        try:
            raw = get_preset(request.preset)
        except KeyError as err:
            raise ConfigError(str(err)) from None
    elif request.config_path:
        raw = parse_config_file(request.config_path)
    else:
        raise ConfigError("one of --preset or --config is required")
    overrides = list(request.overrides)
    if request.engine is not None:
        overrides.append(f"engine={request.engine}")
    if request.dt_us is not None:
        overrides.append(f"dt_us={request.dt_us!r}")
    raw = apply_overrides(raw, overrides)
    return build(raw)


def _meta(request: RunRequest, resolved: ResolvedConfig) -> dict:
    return {
        "tool": "brillouin-ramsey",
        "version": __version__,
        "subcommand": request.subcommand,
        "preset": request.preset,
        "overrides": list(request.overrides),
        "config": resolved.raw,
    }


def request_from_meta(meta: dict) -> RunRequest:
    """Reconstruct an equivalent request from a CSV meta block."""
    return RunRequest(subcommand=meta["subcommand"], config_inline=dict(meta["config"]))


def _require_out(request: RunRequest) -> str:
    if not request.out_path:
        raise ConfigError(f"'{request.subcommand}' needs --out")
    return request.out_path


def _run_fringe(request: RunRequest, resolved: ResolvedConfig) -> int:
    out = _require_out(request)
    meta = _meta(request, resolved)
    if resolved.kind == "visibility":
        axis2 = resolved.spec.axis2
        if axis2 is None or axis2.name != "kappa":
            raise ConfigError("visibility runs sweep kappa; set axis2 = kappa")
        curve = visibility_curve(resolved.spec, axis2.values)
        write_visibility_csv(out, curve, meta)
    else:
        trace = sweep(replace(resolved.spec, axis2=None))
        write_fringe_csv(out, trace, meta)
    print(f"wrote {out}")
    return 0


def _run_sweep2d(request: RunRequest, resolved: ResolvedConfig) -> int:
    out = _require_out(request)
    if resolved.kind == "visibility":
        raise ConfigError("visibility presets are one-axis runs; use 'fringe'")
    if resolved.spec.axis2 is None:
        raise ConfigError("sweep2d needs a second axis; set axis2 in the config")
    grid = sweep(resolved.spec)
    write_grid_csv(out, grid, _meta(request, resolved))
    print(f"wrote {out}")
    return 0


def _run_trace(request: RunRequest, resolved: ResolvedConfig) -> int:
    out = _require_out(request)
    spec = resolved.spec
    if spec.engine is Engine.ANALYTIC:
        raise ConfigError("trace needs a time-domain engine; use --engine ode or nonlinear")
    if spec.engine is Engine.LINEAR_ODE:
        dp = derive(spec.params, spec.schedule, spec.regime,
                    omega_x=resolved.omega_x_base, coupling=spec.coupling, mode=spec.mode)
        trace = evolve_linear(dp, spec.schedule, spec.integrator)
    else:
        if spec.mode is not ConfigMode.MICROSCOPIC:
            raise ConfigError("the nonlinear engine requires a microscopic configuration")
        trace = evolve_nonlinear(spec.params, spec.schedule, spec.regime,
                                 spec.integrator, omega_x=resolved.omega_x_base)
    write_trace_csv(out, trace, _meta(request, resolved))
    print(f"wrote {out}")
    return 0


def _run_validate(request: RunRequest, resolved: ResolvedConfig) -> int:
    spec = resolved.spec
    checks: list[dict] = []

    cmp_lin = compare_engines(spec, (Engine.ANALYTIC, Engine.LINEAR_ODE),
                              tolerance=ANALYTIC_VS_ODE_TOL)
    checks.append({
        "check": "analytic_vs_linear_ode",
        "linf": cmp_lin.linf, "tolerance": cmp_lin.tolerance, "passed": cmp_lin.passed,
    })

    dp = derive(spec.params, spec.schedule, spec.regime,
                omega_x=resolved.omega_x_base, coupling=spec.coupling, mode=spec.mode)
    conv = convergence_check(dp, spec.schedule, spec.integrator)
    checks.append({
        "check": "dt_halving", "rel_delta": conv.rel_delta,
        "tolerance": CONVERGENCE_THRESHOLD, "passed": conv.passed,
        "stability_error": conv.stability_error,
    })

    if spec.mode is ConfigMode.MICROSCOPIC:
        # nonlinear runs are costly; compare on a thinned omega_x grid
        axis1 = replace(spec.axis1, values=spec.axis1.values[:: max(1, spec.axis1.values.size // 40)])
        nl_spec = replace(spec, axis1=axis1, axis2=None, engine=Engine.NONLINEAR_ODE)
        cmp_nl = compare_engines(nl_spec, (Engine.LINEAR_ODE, Engine.NONLINEAR_ODE),
                                 tolerance=LINEAR_VS_NONLINEAR_TOL)
        checks.append({
            "check": "linear_vs_nonlinear_ode",
            "linf": cmp_nl.linf, "tolerance": cmp_nl.tolerance, "passed": cmp_nl.passed,
        })

    all_passed = all(c["passed"] for c in checks)
    for c in checks:
        status = "PASS" if c["passed"] else "FAIL"
        measure = c.get("linf", c.get("rel_delta"))
        line = f"{c['check']}: {measure:.3e} (tolerance {c['tolerance']:.0e}) {status}"
        if c.get("stability_error"):
            line += f" [{c['stability_error']}]"
        print(line)
    if request.out_path:
        summary = {"meta": _meta(request, resolved), "checks": checks, "passed": all_passed}
        with open(request.out_path, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, sort_keys=True, indent=1)
            fh.write("\n")
        print(f"wrote {request.out_path}")
    return 0 if all_passed else 1


def _run_presets() -> int:
    for name in preset_names():
        print(f"{name:18s} {DESCRIPTIONS.get(name, '')}")
    return 0


def run(request: RunRequest) -> int:
    if request.subcommand == "presets":
        return _run_presets()
    resolved = _resolve(request)
    handler = {
        "fringe": _run_fringe,
        "sweep2d": _run_sweep2d,
        "trace": _run_trace,
        "validate": _run_validate,
    }[request.subcommand]
    return handler(request, resolved)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brillouin-ramsey",
        description="Ramsey fringes from Brillouin opto-acoustic scattering: "
                    "closed forms, coupled-mode integrators, parameter sweeps.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", help="bundled preset name (see 'presets')")
    common.add_argument("--config", dest="config_path", help="configuration file path")
    common.add_argument("--out", dest="out_path", help="output file path")
    common.add_argument("--set", dest="overrides", action="append", default=[],
                        metavar="KEY=VALUE", help="override a config key (repeatable)")
    common.add_argument("--engine", choices=["analytic", "ode", "nonlinear"],
                        help="evaluation engine override")
    common.add_argument("--dt-us", dest="dt_us", type=float, help="integrator step override [us]")

    sub = parser.add_subparsers(dest="subcommand", required=True)
    sub.add_parser("fringe", parents=[common], help="write a one-axis fringe CSV")
    sub.add_parser("sweep2d", parents=[common], help="write a two-axis fringe grid CSV")
    sub.add_parser("trace", parents=[common], help="write a time-domain trace CSV")
    sub.add_parser("validate", parents=[common],
                   help="cross-check engines and step-size convergence")
    sub.add_parser("presets", help="list bundled presets")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    request = RunRequest(
        subcommand=args.subcommand,
        config_path=getattr(args, "config_path", None),
        preset=getattr(args, "preset", None),
        out_path=getattr(args, "out_path", None),
        overrides=list(getattr(args, "overrides", [])),
        engine=getattr(args, "engine", None),
        dt_us=getattr(args, "dt_us", None),
    )
    try:
        return run(request)
    except (ConfigError, StabilityError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
