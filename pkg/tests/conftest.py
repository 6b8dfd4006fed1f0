import dataclasses

import numpy as np
import pytest

from fermsim import (DistributionSpec, DivisionParams, KineticParams,
                     TemperatureProfile, assemble_operator, build_grid,
                     default_config)
from fermsim import simulate as sim


@pytest.fixture(scope="session")
def kp():
    return KineticParams()


@pytest.fixture(scope="session")
def dp():
    return DivisionParams()


@pytest.fixture(scope="session")
def profile():
    return TemperatureProfile()


@pytest.fixture(scope="session")
def grid150():
    return build_grid(0.001, 0.999, 150)


@pytest.fixture(scope="session")
def op150(grid150, dp):
    return assemble_operator(grid150, dp, 30)


@pytest.fixture(scope="session")
def grid30():
    return build_grid(0.001, 0.999, 30)


@pytest.fixture(scope="session")
def op30(grid30, dp):
    return assemble_operator(grid30, dp, 30)


def run_with(tmp_root, **overrides):
    """Run the driver with field overrides applied to the default config."""
    config = dataclasses.replace(default_config(), output_dir=str(tmp_root),
                                 **overrides)
    return sim.run(config)


@pytest.fixture(scope="session")
def default_run(tmp_path_factory):
    """The default 20-day run: C=150, h=1/192, constant distribution."""
    return run_with(tmp_path_factory.mktemp("default_run"))


@pytest.fixture(scope="session")
def distribution_runs(tmp_path_factory, default_run):
    """20-day runs for all four initial distributions."""
    runs = {"constant": default_run}
    for kind in ("beta", "small_to_medium", "two_normal_peak"):
        runs[kind] = run_with(tmp_path_factory.mktemp(f"run_{kind}"),
                              distribution=DistributionSpec(kind=kind))
    return runs


@pytest.fixture(scope="session")
def ode_run(tmp_path_factory):
    """Reduced-model run, moment-matched to the constant distribution."""
    return run_with(tmp_path_factory.mktemp("ode_run"), model="ode")


def density_block(result):
    """(times, w) matrix of a completed full-model run, in cells/ml."""
    C = result.config.n_cells
    return result.trajectory.times, 1e6 * result.trajectory.states[:, :C]


def concentration_block(result):
    """(times, N, E, S, O) columns of a completed full-model run."""
    C = result.config.n_cells
    s = result.trajectory.states
    return (result.trajectory.times, s[:, C], s[:, C + 1], s[:, C + 2],
            s[:, C + 3])


def interior_maxima(values):
    """Indices of strict interior local maxima of a 1-D array."""
    values = np.asarray(values)
    idx = []
    for i in range(1, len(values) - 1):
        if values[i] > values[i - 1] and values[i] > values[i + 1]:
            idx.append(i)
    return idx
