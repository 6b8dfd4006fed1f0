import numpy as np
import pytest

from fermsim import KineticParams, NewtonConfig, OdeState, TemperatureProfile, run_ode
from fermsim.oracles import fd_jacobian, jacobian_deviation
from fermsim.reduced import ode_jacobian_vector, ode_rhs, ode_rhs_vector


def test_rhs_signs(kp, profile):
    y = np.array([0.5, 0.40, 10.0, 150.0, 0.005])
    dy = ode_rhs_vector(0.0, y, kp, profile)
    assert dy[0] > 0.0   # biomass grows while substrate is plentiful
    assert dy[1] < 0.0   # nitrogen consumed
    assert dy[2] > 0.0   # ethanol produced
    assert dy[3] < 0.0   # sugar consumed
    assert dy[4] < 0.0   # oxygen consumed


def test_rhs_wrapper_roundtrip(kp, profile):
    state = OdeState(X=0.5, N=0.4, E=0.0, S=193.0, O=0.012, t=1.0)
    ds = ode_rhs(state, kp, profile)
    assert np.allclose(ds.to_vector(),
                       ode_rhs_vector(1.0, state.to_vector(), kp, profile))


def test_zero_biomass_is_stationary_for_substrates(kp, profile):
    y = np.array([0.0, 0.4, 0.0, 193.0, 0.012])
    dy = ode_rhs_vector(0.0, y, kp, profile)
    assert np.all(dy == 0.0)


def test_jacobian_matches_finite_differences(kp, profile):
    rng = np.random.default_rng(5)
    for _ in range(20):
        y = np.array([rng.uniform(0.0, 2.0), rng.uniform(0.0, 0.5),
                      rng.uniform(0.0, 110.0), rng.uniform(0.0, 200.0),
                      rng.uniform(0.0, 0.02)])
        t = rng.uniform(0.0, profile.t_final)
        analytic = ode_jacobian_vector(t, y, kp, profile)
        approx = fd_jacobian(
            t, y, lambda tt, yy: ode_rhs_vector(tt, yy, kp, profile), 1e-7)
        assert jacobian_deviation(analytic, approx) <= 1e-5


def test_twenty_day_run_depletes_substrates(kp, profile):
    y0 = OdeState(X=0.5, N=0.40, E=0.0, S=193.0, O=0.012)
    traj = run_ode(y0, 20.0, 1.0 / 192.0, kp, profile, NewtonConfig())
    assert traj.completed
    X, N, E, S, O = traj.states[-1]
    assert E > 80.0
    assert S < 30.0
    assert O < 0.01 * y0.O
    assert np.all(np.diff(traj.states[:, 2]) >= -1e-12)   # E nondecreasing
    assert np.all(np.diff(traj.states[:, 3]) <= 1e-12)    # S nonincreasing
