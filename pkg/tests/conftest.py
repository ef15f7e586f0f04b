import numpy as np
import pytest

from brillouin_ramsey import (
    MHZ,
    IntegratorConfig,
    PhysicalParams,
    PulseSchedule,
    Regime,
    derive,
)

# base parameter set of the kappa = 2pi x 40 MHz fringe figures
COUPLING = 0.58 * MHZ
GAMMA_M = 0.02 * MHZ
EPS_PROBE = 1.0 * MHZ


@pytest.fixture
def params40():
    return PhysicalParams(kappa_a=40 * MHZ, kappa_c=40 * MHZ, gamma_m=GAMMA_M)


@pytest.fixture
def params30():
    return PhysicalParams(kappa_a=30 * MHZ, kappa_c=30 * MHZ, gamma_m=GAMMA_M)


@pytest.fixture
def schedule():
    return PulseSchedule(tau1=4.0, t_free=4.0, tau2=0.1, eps_probe=EPS_PROBE)


@pytest.fixture
def dp_rwa(params40, schedule):
    return derive(params40, schedule, Regime.RWA, coupling=COUPLING)


@pytest.fixture
def dp_arwa(params40, schedule):
    return derive(params40, schedule, Regime.ANTI_RWA, coupling=COUPLING)


@pytest.fixture
def omega_grid():
    return np.linspace(-MHZ, MHZ, 81)


@pytest.fixture
def coarse_integrator():
    # coarse but stable; unit tests favour speed over the acceptance dt
    return IntegratorConfig(dt=2e-4, sample_stride=50)
