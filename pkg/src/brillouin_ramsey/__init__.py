"""Ramsey fringes from stimulated Brillouin scattering in a whispering-gallery resonator.

Closed-form fringe solutions in the rwa (beam-splitter) and anti_rwa
(two-mode-squeezing) regimes, fixed-step coupled-mode integrators serving as
their brute-force oracle, and parameter sweeps with CSV artifacts.
"""

__version__ = "0.1.0"

from .analytic import (
    FringePoint,
    fringe_arwa,
    fringe_point,
    fringe_rwa,
    phonon_after_first_pulse,
    phonon_after_free_evolution,
    pulse_response,
)
from .dynamics import (
    ConvergenceReport,
    IntegratorConfig,
    ModeTrace,
    convergence_check,
    evolve_linear,
    evolve_nonlinear,
    linear_final_states,
    nonlinear_final_states,
    readout,
)
from .errors import ConfigError, InconsistencyError, StabilityError
from .experiment import (
    Axis,
    Engine,
    EngineComparison,
    Extremum,
    FringeGrid,
    FringeTrace,
    SweepSpec,
    VisibilityCurve,
    compare_engines,
    fringe_strength,
    locate_extrema,
    sweep,
    visibility,
    visibility_curve,
)
from .model import (
    HBAR,
    MHZ,
    ConfigMode,
    DerivedParams,
    PhaseParams,
    PhysicalParams,
    PulseSchedule,
    Regime,
    control_steady_amplitude,
    derive,
    drive_strength_from_power,
    gain_threshold_coupling,
    phase_params,
    pulse_envelope,
)

__all__ = [
    "HBAR",
    "MHZ",
    "Axis",
    "ConfigError",
    "ConfigMode",
    "ConvergenceReport",
    "DerivedParams",
    "Engine",
    "EngineComparison",
    "Extremum",
    "FringeGrid",
    "FringePoint",
    "FringeTrace",
    "InconsistencyError",
    "IntegratorConfig",
    "ModeTrace",
    "PhaseParams",
    "PhysicalParams",
    "PulseSchedule",
    "Regime",
    "StabilityError",
    "SweepSpec",
    "VisibilityCurve",
    "compare_engines",
    "control_steady_amplitude",
    "convergence_check",
    "derive",
    "drive_strength_from_power",
    "evolve_linear",
    "evolve_nonlinear",
    "fringe_arwa",
    "fringe_point",
    "fringe_rwa",
    "fringe_strength",
    "gain_threshold_coupling",
    "linear_final_states",
    "locate_extrema",
    "nonlinear_final_states",
    "phase_params",
    "phonon_after_first_pulse",
    "phonon_after_free_evolution",
    "pulse_envelope",
    "pulse_response",
    "readout",
    "sweep",
    "visibility",
    "visibility_curve",
]
