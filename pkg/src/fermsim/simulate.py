"""Simulation driver: run a configured model and emit CSV artifacts.

Outputs in ``config.output_dir``:

* ``trajectory.csv`` — one row per time step.  Full model columns:
  ``t,N,E,S,O,total_cells,log10_total_cells,T,newton_iters``; reduced
  model columns: ``t,X,N,E,S,O,T,newton_iters``.
* ``density_t<time>.csv`` — density snapshots (``m_center,w``) at the
  configured snapshot times, matched to the nearest integration step
  (full model only).
* ``run_summary.txt`` — final values, wall time, step statistics.

Internally the number density is carried in units of 1e6 cells/ml so the
g/l substrate balances close with the standard yield constants; the
public artifacts are in cells/ml.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass

import numpy as np

from .config import SimulationConfig
from .distributions import build_initial_density
from .errors import ConfigError, IntegrationFailure
from .grid import build_grid
from .integrator import Trajectory, integrate
from .kinetics import temperature
from .operator import assemble_operator
from .reduced import OdeState, run_ode
from .system import jacobian_vector, rhs_vector

#: internal density unit, cells/ml
DENSITY_SCALE = 1.0e6


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_csv(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_fmt(v) for v in row) + "\n")


def read_csv(path: str):
    """Read one of our CSV artifacts -> (header list, float array)."""
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
        data = np.loadtxt(handle, delimiter=",", ndmin=2)
    return header, data


@dataclass
class RunResult:
    config: SimulationConfig
    trajectory: Trajectory
    output_dir: str
    wall_time: float
    files: list


def initial_biomass(config: SimulationConfig) -> float:
    """First moment of the configured initial distribution, in g/l."""
    grid = build_grid(config.m_min, config.m_max, config.n_cells)
    w0 = build_initial_density(config.distribution, grid) / DENSITY_SCALE
    return float(grid.dm * np.dot(grid.centers, w0))


def _newton_column(trajectory: Trajectory) -> np.ndarray:
    iters = np.zeros(len(trajectory.times))
    for k, record in enumerate(trajectory.records, start=1):
        iters[k] = record.newton_iterations
    return iters


def _snapshot_indices(times: np.ndarray, snapshot_times) -> dict:
    return {t_req: int(np.argmin(np.abs(times - t_req))) for t_req in snapshot_times}


def _summary_lines(config, trajectory, finals, wall_time):
    iters = [r.newton_iterations for r in trajectory.records]
    lines = [
        f"model = {config.model}",
        f"completed = {trajectory.completed}",
        f"t_final_reached = {_fmt(trajectory.times[-1])}",
        f"wall_time_seconds = {wall_time:.3f}",
        f"steps = {len(trajectory.records)}",
    ]
    if iters:
        lines += [
            f"newton_iterations_median = {float(np.median(iters)):g}",
            f"newton_iterations_max = {max(iters)}",
            f"newton_all_converged = {all(r.converged for r in trajectory.records)}",
        ]
    lines += [f"final_{name} = {_fmt(value)}" for name, value in finals]
    if trajectory.failure:
        lines.append(f"failure = {trajectory.failure}")
    return lines


def run(config: SimulationConfig) -> RunResult:
    """Run the configured simulation and write artifacts.

    Raises IntegrationFailure after writing partial artifacts if a time
    step fails to converge.
    """
    os.makedirs(config.output_dir, exist_ok=True)
    start = time.perf_counter()
    if config.model == "ode":
        result = _run_ode(config, start)
    else:
        result = _run_ide(config, start)
    if not result.trajectory.completed:
        raise IntegrationFailure(
            f"integration aborted at t={result.trajectory.times[-1]:g}: "
            f"{result.trajectory.failure}")
    return result


def _run_ide(config: SimulationConfig, start: float) -> RunResult:
    grid = build_grid(config.m_min, config.m_max, config.n_cells)
    op = assemble_operator(grid, config.division, config.n_quad)
    w0 = build_initial_density(config.distribution, grid) / DENSITY_SCALE
    ini = config.initial
    y0 = np.concatenate([w0, [ini.N0, ini.E0, ini.S0, ini.O0]])
    kp, profile = config.kinetic, config.profile

    trajectory = integrate(
        lambda t, y: rhs_vector(t, y, op, kp, profile),
        lambda t, y: jacobian_vector(t, y, op, kp, profile),
        y0, config.t_final, config.dt, config.newton)
    wall = time.perf_counter() - start

    C = config.n_cells
    times = trajectory.times
    states = trajectory.states
    total = DENSITY_SCALE * grid.dm * states[:, :C].sum(axis=1)
    with np.errstate(divide="ignore"):
        log_total = np.where(total > 0.0, np.log10(np.maximum(total, 1e-300)), -math.inf)
    temps = np.array([temperature(profile, t) for t in times])
    rows = np.column_stack([
        times, states[:, C], states[:, C + 1], states[:, C + 2], states[:, C + 3],
        total, log_total, temps, _newton_column(trajectory)])

    files = []
    traj_path = os.path.join(config.output_dir, "trajectory.csv")
    _write_csv(traj_path,
               ["t", "N", "E", "S", "O", "total_cells", "log10_total_cells",
                "T", "newton_iters"], rows)
    files.append(traj_path)

    for t_req, idx in _snapshot_indices(times, config.snapshot_times).items():
        if t_req > times[-1] + 0.5 * config.dt:
            continue  # not reached (partial trajectory)
        name = f"density_t{t_req:g}.csv"
        path = os.path.join(config.output_dir, name)
        w = DENSITY_SCALE * states[idx, :C]
        _write_csv(path, ["m_center", "w"], np.column_stack([grid.centers, w]))
        files.append(path)

    finals = list(zip(["N", "E", "S", "O", "total_cells"],
                      [states[-1, C], states[-1, C + 1], states[-1, C + 2],
                       states[-1, C + 3], total[-1]]))
    summary_path = os.path.join(config.output_dir, "run_summary.txt")
    with open(summary_path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(_summary_lines(config, trajectory, finals, wall)) + "\n")
    files.append(summary_path)
    return RunResult(config, trajectory, config.output_dir, wall, files)


def _run_ode(config: SimulationConfig, start: float) -> RunResult:
    ini = config.initial
    y0 = OdeState(X=initial_biomass(config), N=ini.N0, E=ini.E0, S=ini.S0, O=ini.O0)
    trajectory = run_ode(y0, config.t_final, config.dt, config.kinetic,
                         config.profile, config.newton)
    wall = time.perf_counter() - start

    times = trajectory.times
    states = trajectory.states
    temps = np.array([temperature(config.profile, t) for t in times])
    rows = np.column_stack([times, states[:, 0], states[:, 1], states[:, 2],
                            states[:, 3], states[:, 4], temps,
                            _newton_column(trajectory)])
    files = []
    traj_path = os.path.join(config.output_dir, "trajectory.csv")
    _write_csv(traj_path, ["t", "X", "N", "E", "S", "O", "T", "newton_iters"], rows)
    files.append(traj_path)

    finals = list(zip(["X", "N", "E", "S", "O"], states[-1]))
    summary_path = os.path.join(config.output_dir, "run_summary.txt")
    with open(summary_path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(_summary_lines(config, trajectory, finals, wall)) + "\n")
    files.append(summary_path)
    return RunResult(config, trajectory, config.output_dir, wall, files)


# ---------------------------------------------------------------------------
# comparison of two completed runs
# ---------------------------------------------------------------------------

_COMPARE_TIMES = (0.0, 5.0, 10.0, 15.0, 20.0)


def compare(dir_a: str, dir_b: str, out_path: str,
            times=None) -> list:
    """Write a per-state relative-difference table for two completed runs.

    States are matched by trajectory column name (time and bookkeeping
    columns excluded).  The relative difference at time t is
    |a(t) - b(t)| / max_t |a(t)|: differences are scaled by the size of
    the reference trajectory, which keeps states that decay to ~0 (e.g.
    dissolved oxygen) from reporting meaningless ratios of round-off
    tails.  Output rows: state, t, value_a, value_b, rel_diff; one extra
    row per state with t = -1 holding the max over the whole horizon.
    Returns the rows.
    """
    header_a, data_a = read_csv(os.path.join(dir_a, "trajectory.csv"))
    header_b, data_b = read_csv(os.path.join(dir_b, "trajectory.csv"))
    skip = {"t", "T", "newton_iters", "log10_total_cells"}
    shared = [c for c in header_a if c in header_b and c not in skip]
    if not shared:
        raise ConfigError("trajectories share no state columns")
    t_a, t_b = data_a[:, header_a.index("t")], data_b[:, header_b.index("t")]
    if times is None:
        horizon = min(t_a[-1], t_b[-1])
        times = [t for t in _COMPARE_TIMES if t <= horizon] or [horizon]

    rows = []
    for state in shared:
        col_a = data_a[:, header_a.index(state)]
        col_b = data_b[:, header_b.index(state)]
        scale = max(float(np.max(np.abs(col_a))), 1e-300)
        # b sampled at a's requested times via nearest rows in each run
        for t_req in times:
            ia = int(np.argmin(np.abs(t_a - t_req)))
            ib = int(np.argmin(np.abs(t_b - t_req)))
            rel = abs(col_a[ia] - col_b[ib]) / scale
            rows.append((state, t_a[ia], col_a[ia], col_b[ib], rel))
        # max over the horizon on a's time points
        ib_all = np.argmin(np.abs(t_b[None, :] - t_a[:, None]), axis=1)
        rel_all = np.abs(col_a - col_b[ib_all]) / scale
        max_rel = float(np.max(rel_all))
        rows.append((state, -1.0, col_a[-1], col_b[ib_all[-1]], max_rel))

    with open(out_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("state,t,value_a,value_b,rel_diff\n")
        for state, t, va, vb, rel in rows:
            handle.write(f"{state},{_fmt(t)},{_fmt(va)},{_fmt(vb)},{_fmt(rel)}\n")
    return rows
