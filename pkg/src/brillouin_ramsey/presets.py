"""Bundled sweep presets reproducing the reference figure layouts.

Each preset is a flat key/value dict in the same vocabulary as configuration
files (frequencies in MHz meaning omega/2pi, times in us), frozen from the
parameter sets the corresponding figures quote. Presets whose second axis is
a list of discrete values carry them under ``axis2_values``.
"""

from __future__ import annotations

import numpy as np

_FIG34_BASE = {
    "kind": "fringe",
    "mode": "effective",
    "engine": "analytic",
    "omega_m_mhz": 42.3,
    "gamma_m_mhz": 0.02,
    "coupling_mhz": 0.58,
    "eps_probe_mhz": 1.0,
    "tau1_us": 4.0,
    "t_free_us": 4.0,
    "tau2_us": 0.1,
    "kappa_a_mhz": 40.0,
    "kappa_c_mhz": 40.0,
    "omega_x_min_mhz": -1.0,
    "omega_x_max_mhz": 1.0,
    "omega_x_count": 401,
    "dt_us": 1e-4,
    "sample_stride": 50,
}

_FIG5_BASE = dict(_FIG34_BASE, kappa_a_mhz=30.0, kappa_c_mhz=30.0)

_KAPPA_GRID_MHZ = [10.0, 20.0, 30.0, 40.0, 50.0, 60.0]
_COUPLING_GRID_MHZ = [round(float(v), 6) for v in np.linspace(0.0, 2.0, 51)]

PRESETS: dict[str, dict] = {
    "fig3_rwa_tau1": dict(_FIG34_BASE, regime="rwa", axis2="tau1",
                          axis2_values=[2.0, 4.0, 8.0]),
    "fig3_rwa_T": dict(_FIG34_BASE, regime="rwa", axis2="t_free",
                       axis2_values=[2.0, 4.0, 8.0]),
    "fig3_rwa_tau2": dict(_FIG34_BASE, regime="rwa", axis2="tau2",
                          axis2_values=[0.05, 0.1, 0.3]),
    "fig3_arwa_tau1": dict(_FIG34_BASE, regime="anti_rwa", axis2="tau1",
                           axis2_values=[2.0, 4.0, 8.0]),
    "fig3_arwa_T": dict(_FIG34_BASE, regime="anti_rwa", axis2="t_free",
                        axis2_values=[2.0, 4.0, 8.0]),
    "fig3_arwa_tau2": dict(_FIG34_BASE, regime="anti_rwa", axis2="tau2",
                           axis2_values=[0.05, 0.1, 0.3]),
    "fig4_rwa": dict(_FIG34_BASE, regime="rwa", axis2="kappa",
                     axis2_values=list(_KAPPA_GRID_MHZ)),
    "fig4_arwa": dict(_FIG34_BASE, regime="anti_rwa", axis2="kappa",
                      axis2_values=list(_KAPPA_GRID_MHZ)),
    "fig4c_visibility": dict(_FIG34_BASE, regime="anti_rwa", kind="visibility",
                             axis2="kappa", axis2_values=list(_KAPPA_GRID_MHZ)),
    "fig5_rwa": dict(_FIG5_BASE, regime="rwa", axis2="coupling",
                     axis2_values=list(_COUPLING_GRID_MHZ)),
    "fig5_arwa": dict(_FIG5_BASE, regime="anti_rwa", axis2="coupling",
                      axis2_values=list(_COUPLING_GRID_MHZ)),
}

DESCRIPTIONS: dict[str, str] = {
    "fig3_rwa_tau1": "rwa fringes vs omega_x for first-pulse lengths 2/4/8 us",
    "fig3_rwa_T": "rwa fringes vs omega_x for free-evolution times 2/4/8 us",
    "fig3_rwa_tau2": "rwa fringes vs omega_x for second-pulse lengths 0.05/0.1/0.3 us",
    "fig3_arwa_tau1": "anti_rwa fringes vs omega_x for first-pulse lengths 2/4/8 us",
    "fig3_arwa_T": "anti_rwa fringes vs omega_x for free-evolution times 2/4/8 us",
    "fig3_arwa_tau2": "anti_rwa fringes vs omega_x for second-pulse lengths 0.05/0.1/0.3 us",
    "fig4_rwa": "rwa fringes vs omega_x across kappa = 2pi x 10..60 MHz",
    "fig4_arwa": "anti_rwa fringes vs omega_x across kappa = 2pi x 10..60 MHz",
    "fig4c_visibility": "fringe visibility of both regimes vs kappa = 2pi x 10..60 MHz",
    "fig5_rwa": "rwa fringes vs omega_x across coupling = 2pi x 0..2 MHz (kappa = 2pi x 30 MHz)",
    "fig5_arwa": "anti_rwa fringes vs omega_x across coupling = 2pi x 0..2 MHz (kappa = 2pi x 30 MHz)",
}


def preset_names() -> list[str]:
    return sorted(PRESETS)


def get_preset(name: str) -> dict:
    """A fresh copy of the named preset's raw configuration."""
    try:
        return dict(PRESETS[name])
    except KeyError:
        raise KeyError(f"unknown preset '{name}'; available: {', '.join(preset_names())}") from None
