"""Physical parameters, pulse envelopes, and regime-resolved effective quantities.

Unit convention
---------------
All angular frequencies and rates are stored in rad/us. Configuration files
and presets speak in ordinary frequencies f = omega/2pi in MHz (so a value
quoted as "2pi x 40 MHz" is entered as 40.0 and stored as 2*pi*40 rad/us).
Times are in us. Planck's constant enters only through
:func:`drive_strength_from_power`, which takes SI power and laser frequency.

The triplet system couples two optical modes, ``a`` and ``c``, to one
acoustic mode ``b`` through a cubic opto-acoustic interaction. A strong
control drive on one optical mode linearizes the interaction for the other
(probe) mode:

* ``rwa`` regime: control on ``a``, readout on ``c``; the linearized
  interaction is beam-splitter-like and the effective phonon rate
  ``Gamma = gamma_m/2 + |G|^2/kappa_c`` is always added damping.
* ``anti_rwa`` regime: control on ``c``, readout on ``a``; the interaction is
  two-mode-squeezing-like and ``Gamma = gamma_m/2 - |G|^2/kappa_a`` can turn
  negative, i.e. gain.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InconsistencyError

TWO_PI = 2.0 * math.pi

# J*s; used only for converting drive power to a drive strength
HBAR = 1.0545718e-34

# rad/us per MHz of ordinary frequency
MHZ = TWO_PI


class Regime(enum.Enum):
    """Which optical mode carries the strong control drive."""

    RWA = "rwa"
    ANTI_RWA = "anti_rwa"


class ConfigMode(enum.Enum):
    """How the effective coupling is specified.

    ``EFFECTIVE``: |G| is given directly (the way figure captions quote it).
    ``MICROSCOPIC``: the single-photon coupling g and the control drive
    strength are given, and G = g * (steady control amplitude) is computed.
    Only microscopic configurations can run the nonlinear three-mode engine.
    """

    EFFECTIVE = "effective"
    MICROSCOPIC = "microscopic"


@dataclass(frozen=True)
class PhysicalParams:
    """Fixed rates and frequencies of the opto-acoustic triplet.

    Optical mode frequencies enter the dynamics only through their detunings
    from the respective lasers, so they are stored that way: ``delta_a =
    omega_a - omega_la`` and ``delta_c = omega_c - omega_lc``. The phonon
    frequency ``omega_m`` is kept for bookkeeping (the swept detuning
    ``omega_x = omega_m - (omega_lc - omega_la)`` is supplied directly by
    sweeps or configuration).

    All fields in rad/us.
    """

    kappa_a: float          # amplitude decay rate of optical mode a
    kappa_c: float          # amplitude decay rate of optical mode c
    gamma_m: float          # phonon energy decay rate
    g: float = 0.0          # single-photon opto-acoustic coupling
    delta_a: float = 0.0    # omega_a - omega_la
    delta_c: float = 0.0    # omega_c - omega_lc
    omega_m: float = 42.3 * MHZ  # phonon frequency (bookkeeping only)

    def __post_init__(self) -> None:
        # kappa = 0 is the idealized lossless case used by invariant checks;
        # operations that require a steady cavity validate positivity themselves
        if self.kappa_a < 0 or self.kappa_c < 0:
            raise ValueError("kappa_a and kappa_c must be non-negative")
        if self.gamma_m < 0:
            raise ValueError("gamma_m must be non-negative")
        if self.g < 0:
            raise ValueError("g must be non-negative")
        if self.omega_m <= 0:
            raise ValueError("omega_m must be positive")


@dataclass(frozen=True)
class PulseSchedule:
    """Two square pulses separated by a free-evolution interval.

    Control and probe envelopes share the same on/off timing: both are on
    during [0, tau1) and [tau1 + t_free, tau1 + t_free + tau2), and off
    otherwise. ``eps_control`` drives the strongly driven (control) mode and
    ``eps_probe`` the readout mode of the active regime.
    """

    tau1: float             # first pulse duration [us]
    t_free: float           # free evolution duration [us]
    tau2: float             # second pulse duration [us]
    eps_probe: float        # probe drive strength during pulses [rad/us]
    eps_control: float = 0.0  # control drive strength during pulses [rad/us]

    def __post_init__(self) -> None:
        if self.tau1 <= 0 or self.tau2 <= 0:
            raise ValueError("tau1 and tau2 must be positive")
        if self.t_free < 0:
            raise ValueError("t_free must be non-negative")
        if self.eps_probe < 0 or self.eps_control < 0:
            raise ValueError("drive strengths must be non-negative")

    @property
    def total(self) -> float:
        """Sequence duration tau1 + t_free + tau2 [us]."""
        return self.tau1 + self.t_free + self.tau2


@dataclass(frozen=True)
class DerivedParams:
    """Regime-resolved effective quantities feeding the fringe solutions.

    ``kappa`` is the decay rate of the probe (readout) mode, ``delta`` its
    laser detuning. ``coupling`` is the effective photon-phonon coupling
    G = g * control_amp; ``gamma_eff`` the dressed phonon rate, which in the
    anti_rwa regime may be negative (gain). ``control_amp`` is None when the
    coupling was given directly and no single-photon g is known.

    ``omega_x`` may be a scalar or an ndarray; downstream evaluators are
    vectorized over it.
    """

    regime: Regime
    omega_x: float | np.ndarray   # omega_m - (omega_lc - omega_la) [rad/us]
    delta: float                  # probe detuning [rad/us]
    coupling: complex             # G_r or G_b [rad/us]
    gamma_eff: float              # Gamma_r or Gamma_b [rad/us]
    kappa: float                  # probe-mode decay rate [rad/us]
    gamma_m: float                # bare phonon energy decay rate [rad/us]
    control_amp: complex | None = None  # alpha or zeta, dimensionless


@dataclass(frozen=True)
class PhaseParams:
    """Interference phase and damping exponent of the two-pulse sequence."""

    phi: float | np.ndarray   # omega_x * (t_free + tau2) [rad]
    theta: float              # (gamma_m/2) * t_free + gamma_eff * tau2


def drive_strength_from_power(power: float, kappa: float, omega_l: float) -> float:
    """Drive strength sqrt(2 * kappa * P / (hbar * omega_l)) in rad/us.

    Parameters
    ----------
    power : external drive power [W]
    kappa : decay rate of the driven mode [rad/us]
    omega_l : laser angular frequency [rad/s] (SI, not the internal unit)
    """
    if power < 0:
        raise ValueError("power must be non-negative")
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    if omega_l <= 0:
        raise ValueError("omega_l must be positive")
    kappa_si = kappa * 1e6  # rad/s
    eps_si = math.sqrt(2.0 * kappa_si * power / (HBAR * omega_l))  # 1/s
    return eps_si * 1e-6


def pulse_envelope(schedule: PulseSchedule, amplitude: float, t: float | np.ndarray):
    """Square-pulse envelope value at time ``t``.

    Returns ``amplitude`` inside either pulse window, 0 during free evolution
    and 0 for any time at or past the end of the sequence.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be non-negative")
    t1 = schedule.tau1
    t2_start = schedule.tau1 + schedule.t_free
    t_end = schedule.total
    on = (t_arr < t1) | ((t_arr >= t2_start) & (t_arr < t_end))
    out = np.where(on, amplitude, 0.0)
    return float(out) if np.isscalar(t) or out.ndim == 0 else out


def control_steady_amplitude(eps: float, kappa: float, detune: float) -> complex:
    """Steady intracavity amplitude eps / (kappa + i*detune) of a driven mode."""
    if kappa <= 0:
        raise ValueError("kappa must be positive")
    return eps / (kappa + 1j * detune)


def derive(
    params: PhysicalParams,
    schedule: PulseSchedule,
    regime: Regime,
    *,
    omega_x: float | np.ndarray = 0.0,
    coupling: float | complex | None = None,
    mode: ConfigMode | None = None,
) -> DerivedParams:
    """Resolve the regime-specific effective quantities.

    With ``coupling`` given (effective mode) it is used as |G| directly and
    the steady control amplitude is back-filled as coupling/g when g > 0.
    Otherwise (microscopic mode) the control mode's steady amplitude is
    computed from ``schedule.eps_control`` and G = g * amplitude.

    Passing a nonzero ``coupling`` together with ``mode=MICROSCOPIC`` demands
    consistency with g and the control drive; g = 0 with a nonzero requested
    coupling is rejected.
    """
    if regime is Regime.RWA:
        kappa_probe, delta_probe = params.kappa_c, params.delta_c
        kappa_ctrl, delta_ctrl = params.kappa_a, params.delta_a
        sign = +1.0
    else:
        kappa_probe, delta_probe = params.kappa_a, params.delta_a
        kappa_ctrl, delta_ctrl = params.kappa_c, params.delta_c
        sign = -1.0

    if mode is None:
        mode = ConfigMode.MICROSCOPIC if coupling is None else ConfigMode.EFFECTIVE

    if mode is ConfigMode.EFFECTIVE:
        if coupling is None:
            raise InconsistencyError("effective mode requires an explicit coupling")
        g_eff = complex(coupling)
        amp = g_eff / params.g if params.g > 0 else None
    else:
        amp = control_steady_amplitude(schedule.eps_control, kappa_ctrl, delta_ctrl)
        g_eff = params.g * amp
        if coupling is not None:
            if params.g == 0 and coupling != 0:
                raise InconsistencyError(
                    "requested a nonzero effective coupling with g = 0 in microscopic mode"
                )
            if abs(g_eff - complex(coupling)) > 1e-9 * max(abs(g_eff), abs(complex(coupling))):
                raise InconsistencyError(
                    f"requested coupling {coupling} inconsistent with g*alpha = {g_eff}"
                )

    if kappa_probe <= 0:
        raise ValueError("deriving effective quantities requires a positive probe kappa")
    gamma_eff = params.gamma_m / 2.0 + sign * abs(g_eff) ** 2 / kappa_probe
    return DerivedParams(
        regime=regime,
        omega_x=omega_x,
        delta=delta_probe,
        coupling=g_eff,
        gamma_eff=gamma_eff,
        kappa=kappa_probe,
        gamma_m=params.gamma_m,
        control_amp=amp,
    )


def phase_params(dp: DerivedParams, schedule: PulseSchedule) -> PhaseParams:
    """Interference phase phi = omega_x*(t_free + tau2) and damping exponent."""
    phi = dp.omega_x * (schedule.t_free + schedule.tau2)
    theta = dp.gamma_m / 2.0 * schedule.t_free + dp.gamma_eff * schedule.tau2
    return PhaseParams(phi=phi, theta=theta)


def gain_threshold_coupling(kappa: float, gamma_m: float) -> float:
    """|G| at which the anti_rwa effective phonon rate crosses zero.

    Below sqrt(kappa * gamma_m / 2) the dressed rate is still damping; above
    it the rate is negative and the phonon mode is amplified.
    """
    if kappa <= 0 or gamma_m < 0:
        raise ValueError("kappa must be positive and gamma_m non-negative")
    return math.sqrt(kappa * gamma_m / 2.0)
