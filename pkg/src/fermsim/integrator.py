"""Implicit trapezoidal time stepping with a full Newton solve per step.

The stepper is generic: it works on plain numpy vectors given callables
f(t, y) and J(t, y).  The nonlinear equation per step is

    g(y) = y - y_n - h/2 * (f(t_{n+1}, y) + f(t_n, y_n)) = 0

solved by Newton's method with iteration matrix I - (h/2) * J, dense LU
via numpy.linalg.solve, initial guess y_n, max-norm residual test.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, StepFailure
from .grid import MassGrid
from .kinetics import KineticParams, TemperatureProfile, growth_tilde_eps


@dataclass(frozen=True)
class NewtonConfig:
    tolerance: float = 1e-10
    max_iterations: int = 100

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ConfigError("newton.tolerance must be > 0")
        if self.max_iterations < 1:
            raise ConfigError("newton.max_iterations must be >= 1")


@dataclass(frozen=True)
class StepRecord:
    t: float
    newton_iterations: int
    residual_norm: float
    converged: bool


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray          # (n_times, dim)
    records: list
    completed: bool = True
    failure: str = None


def trapezoid_step(y_n: np.ndarray, t_n: float, h: float, f, jac,
                   cfg: NewtonConfig = NewtonConfig()):
    """Advance one implicit trapezoidal step; returns (y_{n+1}, StepRecord)."""
    if h <= 0:
        raise ConfigError("step size must be > 0")
    y_n = np.asarray(y_n, dtype=float)
    t1 = t_n + h
    f_n = np.asarray(f(t_n, y_n), dtype=float)
    y = y_n.copy()
    updates = 0
    while True:
        g = y - y_n - 0.5 * h * (np.asarray(f(t1, y), dtype=float) + f_n)
        res = float(np.max(np.abs(g)))
        if res <= cfg.tolerance:
            return y, StepRecord(t=t1, newton_iterations=max(updates, 1),
                                 residual_norm=res, converged=True)
        if updates >= cfg.max_iterations:
            rec = StepRecord(t=t1, newton_iterations=updates,
                             residual_norm=res, converged=False)
            raise StepFailure(
                f"Newton failed at t={t1}: residual {res:.3e} after {updates} iterations",
                record=rec)
        A = np.eye(len(y)) - 0.5 * h * np.asarray(jac(t1, y), dtype=float)
        try:
            dy = np.linalg.solve(A, g)
        except np.linalg.LinAlgError as exc:
            rec = StepRecord(t=t1, newton_iterations=updates,
                             residual_norm=res, converged=False)
            raise StepFailure(f"singular Newton matrix at t={t1}: {exc}", record=rec)
        y = y - dy
        updates += 1


def integrate(f, jac, y0: np.ndarray, t_final: float, h: float,
              cfg: NewtonConfig = NewtonConfig(), callback=None) -> Trajectory:
    """Fixed-step march over [0, t_final]; aborts cleanly on step failure.

    ``callback(step_index, t, y)`` is invoked after every accepted step
    (and once for the initial state).
    """
    y0 = np.asarray(y0, dtype=float)
    if t_final < 0:
        raise ConfigError("t_final must be >= 0")
    n_steps = int(round(t_final / h)) if t_final > 0 else 0
    if t_final > 0 and abs(n_steps * h - t_final) > 1e-9 * max(1.0, t_final):
        raise ConfigError(f"step size {h} does not divide t_final {t_final}")

    states = np.empty((n_steps + 1, len(y0)))
    states[0] = y0
    times = h * np.arange(n_steps + 1)
    times[-1] = t_final if n_steps else 0.0
    records = []
    if callback is not None:
        callback(0, 0.0, y0)
    for k in range(n_steps):
        t_n = k * h
        try:
            y_new, rec = trapezoid_step(states[k], t_n, h, f, jac, cfg)
        except StepFailure as exc:
            return Trajectory(times=times[:k + 1], states=states[:k + 1],
                              records=records, completed=False, failure=str(exc))
        states[k + 1] = y_new
        records.append(rec)
        if callback is not None:
            callback(k + 1, times[k + 1], y_new)
    return Trajectory(times=times, states=states, records=records)


def suggest_dt(grid: MassGrid, kp: KineticParams, profile: TemperatureProfile,
               bound_state, cfl: float, cap: float = None) -> float:
    """CFL-informed step suggestion: cfl * dm / max edge growth velocity.

    Advisory only; the trapezoidal scheme is implicit.  The velocity is
    maximized over the profile's temperature endpoints at the supplied
    bounding state.
    """
    if not 0.0 < cfl <= 1.0:
        raise ConfigError("cfl must be in (0, 1]")
    v_max = 0.0
    for T in (profile.T_low, profile.T_high):
        rt = growth_tilde_eps(kp, bound_state.N, bound_state.S, bound_state.O, T)
        v_max = max(v_max, rt * grid.edges.max())
    if v_max == 0.0:
        return cap if cap is not None else profile.t_final / 100.0
    return cfl * grid.dm / v_max
