"""Simulation configuration: dataclass plus a flat ``key = value`` file format.

The config file is plain text: one ``key = value`` pair per line, ``#``
starts a comment, blank lines are ignored.  Nested structure uses dotted
keys (``division.gamma = 200``).  The bare names of the standard model
parameters (``mu1``, ``gamma``, ``tol``, ...) are accepted as aliases for
their dotted forms.  Values are decimal or scientific-notation numbers;
``snapshot_times`` takes a comma-separated list; ``model``,
``distribution.kind`` and ``output_dir`` take strings.

An empty file yields the full default configuration: the standard
parameter set, 150 mass cells on [0.001, 0.999], h = 1/192 day, 20 days,
constant initial distribution with 1e6 cells/ml, and the calibrated
initial concentrations / sugar yields documented in the README.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

from .distributions import KINDS, DistributionSpec
from .errors import ConfigError
from .integrator import NewtonConfig
from .kinetics import DivisionParams, KineticParams, TemperatureProfile

MODELS = ("ide", "ode")


@dataclass(frozen=True)
class InitialConcentrations:
    """Initial substrate/product concentrations in g/l.

    ``N0``, ``S0`` and ``O0`` are calibration choices (together with the
    sugar yields ``k2``/``k3``), selected by a grid search on the reduced
    ODE model so the default 20-day run lands near the reference final
    values.  See the README config reference.
    """

    N0: float = 0.40
    S0: float = 193.0
    O0: float = 0.012
    E0: float = 0.0

    def __post_init__(self):
        for name in ("N0", "S0", "O0", "E0"):
            if getattr(self, name) < 0:
                raise ConfigError(f"initial.{name} must be >= 0")


@dataclass(frozen=True)
class SimulationConfig:
    kinetic: KineticParams = field(default_factory=KineticParams)
    division: DivisionParams = field(default_factory=DivisionParams)
    profile: TemperatureProfile = field(default_factory=TemperatureProfile)
    m_min: float = 0.001
    m_max: float = 0.999
    n_cells: int = 150
    dt: float = 1.0 / 192.0
    t_final: float = 20.0
    distribution: DistributionSpec = field(default_factory=DistributionSpec)
    initial: InitialConcentrations = field(default_factory=InitialConcentrations)
    newton: NewtonConfig = field(default_factory=NewtonConfig)
    n_quad: int = 30
    snapshot_times: tuple = (0.0, 5.0, 10.0, 15.0, 20.0)
    output_dir: str = "output"
    model: str = "ide"

    def __post_init__(self):
        if self.model not in MODELS:
            raise ConfigError(f"model must be one of {MODELS}, got {self.model!r}")
        if self.n_cells < 3:
            raise ConfigError("grid.n_cells must be >= 3")
        if not self.m_max > self.m_min:
            raise ConfigError("grid.m_max must exceed grid.m_min")
        if self.dt <= 0:
            raise ConfigError("dt must be > 0")
        if self.t_final <= 0:
            raise ConfigError("t_final must be > 0")
        if self.n_quad < 1:
            raise ConfigError("n_quad must be >= 1")
        for t in self.snapshot_times:
            if not 0.0 <= t <= self.t_final:
                raise ConfigError(
                    f"snapshot_times entry {t} outside [0, t_final={self.t_final}]")
        # Rate coefficients must stay nonnegative over the temperature range.
        self.kinetic.check_temperature_range(self.profile.T_low, self.profile.T_high)


def default_config() -> SimulationConfig:
    return SimulationConfig()


# ---------------------------------------------------------------------------
# key = value parsing
# ---------------------------------------------------------------------------

# canonical dotted key -> (section attribute on SimulationConfig or None for
# top level, field name, parser)
def _float(key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"key {key!r}: expected a number, got {raw!r}") from None


def _int(key, raw):
    value = _float(key, raw)
    if value != int(value):
        raise ConfigError(f"key {key!r}: expected an integer, got {raw!r}")
    return int(value)


def _string(key, raw):
    return raw


def _float_list(key, raw):
    return tuple(_float(key, part.strip()) for part in raw.split(",") if part.strip())


def _registry():
    table = {}
    for f in fields(KineticParams):
        table[f"kinetic.{f.name}"] = ("kinetic", f.name, _float)
    for f in fields(DivisionParams):
        table[f"division.{f.name}"] = ("division", f.name, _float)
    for f in fields(TemperatureProfile):
        table[f"temperature.{f.name}"] = ("profile", f.name, _float)
    for name in ("N0", "S0", "O0", "E0"):
        table[f"initial.{name}"] = ("initial", name, _float)
    table["newton.tolerance"] = ("newton", "tolerance", _float)
    table["newton.max_iterations"] = ("newton", "max_iterations", _int)
    table["distribution.kind"] = ("distribution", "kind", _string)
    for f in fields(DistributionSpec):
        if f.name != "kind":
            table[f"distribution.{f.name}"] = ("distribution", f.name, _float)
    table["grid.m_min"] = (None, "m_min", _float)
    table["grid.m_max"] = (None, "m_max", _float)
    table["grid.n_cells"] = (None, "n_cells", _int)
    table["dt"] = (None, "dt", _float)
    table["t_final"] = (None, "t_final", _float)
    table["n_quad"] = (None, "n_quad", _int)
    table["snapshot_times"] = (None, "snapshot_times", _float_list)
    table["output_dir"] = (None, "output_dir", _string)
    table["model"] = (None, "model", _string)
    return table


_TABLE = _registry()

# bare-name shortcuts for the standard parameter tables
_ALIASES = {f.name: f"kinetic.{f.name}" for f in fields(KineticParams)}
_ALIASES.update({
    "gamma": "division.gamma",
    "delta": "division.delta",
    "lambda": "division.lam",
    "lam": "division.lam",
    "m_t": "division.m_t",
    "m_d": "division.m_d",
    "N0": "initial.N0",
    "S0": "initial.S0",
    "O0": "initial.O0",
    "E0": "initial.E0",
    "distribution": "distribution.kind",
    "total_cells": "distribution.total_cells",
    "cells": "grid.n_cells",
    "n_cells": "grid.n_cells",
})
# Table 2's beta is the partition-width parameter; the kinetic slopes are
# beta1/beta2, so the bare name is unambiguous.
_ALIASES["beta"] = "division.beta"


def parse_assignments(text: str) -> dict:
    """Parse flat ``key = value`` text into {canonical key: parsed value}."""
    parsed = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, raw = (part.strip() for part in stripped.split("=", 1))
        canonical = _ALIASES.get(key, key)
        if canonical not in _TABLE:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        _, _, parser = _TABLE[canonical]
        parsed[canonical] = parser(key, raw)
    return parsed


def _apply(config: SimulationConfig, assignments: dict) -> SimulationConfig:
    sections = {}
    top = {}
    for canonical, value in assignments.items():
        section, name, _ = _TABLE[canonical]
        if section is None:
            top[name] = value
        else:
            sections.setdefault(section, {})[name] = value
    # A new partition width implies a new normalization constant unless the
    # caller pins one explicitly.
    if "beta" in sections.get("division", {}) and "lam" not in sections["division"]:
        sections["division"]["lam"] = None
    # When t_final changes without an explicit temperature profile, keep the
    # default ramp window at [0.475, 0.525] of the horizon.
    if "t_final" in top and "profile" not in sections:
        tf = top["t_final"]
        sections["profile"] = {
            "t_ramp_start": 0.475 * tf,
            "t_ramp_end": 0.525 * tf,
            "t_final": tf,
        }
    # ... and drop stale snapshot times beyond the new horizon.
    if "t_final" in top and "snapshot_times" not in top:
        kept = tuple(t for t in config.snapshot_times if t <= top["t_final"])
        top["snapshot_times"] = kept or (top["t_final"],)
    try:
        kwargs = dict(top)
        for section, values in sections.items():
            kwargs[section] = replace(getattr(config, section), **values)
        return replace(config, **kwargs)
    except ConfigError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc


def build_config(assignments: dict) -> SimulationConfig:
    """Build a validated SimulationConfig from canonical-key assignments."""
    return _apply(default_config(), assignments)


def load_config(path: str) -> SimulationConfig:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    return build_config(parse_assignments(text))


def apply_overrides(config: SimulationConfig, overrides: dict) -> SimulationConfig:
    """Apply {key: raw string value} overrides (CLI flags) on top of a config."""
    text = "\n".join(f"{key} = {value}" for key, value in overrides.items())
    return _apply(config, parse_assignments(text))
