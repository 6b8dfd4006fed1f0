"""Continuous model functions of the fermentation population-balance model.

Everything here is a pure function of its arguments: Michaelis--Menten
growth/production rates, the ethanol-related death function, the cell
division rate and daughter-mass partitioning density, and the linear
temperature dependencies of the kinetic coefficients.

Units
-----
time in days, concentrations in g/l, cell mass as the dimensionless
scaled mass on [0.001, 0.999] (one scaled-mass unit corresponds to
1e-9 g of physical cell mass).  Cell number densities are measured in
10^6 cells/ml per unit scaled mass, which makes the substrate equations
dimensionally consistent with the tabulated yield coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError, ModelValidityError


@dataclass(frozen=True)
class KineticParams:
    """Kinetic constants of the reaction-rate model.

    ``mu1``/``mu2``, ``beta1``/``beta2`` and ``KE1``/``KE2`` are the
    slope/offset pairs of the temperature-linear coefficients
    mu_max(T), beta_max(T) and K_E(T).  ``k2`` and ``k3`` (sugar
    yields) are calibration values, see the config reference.
    """

    mu1: float = 0.1681      # 1/(day degC)
    mu2: float = 0.0         # 1/day
    beta1: float = 0.1348    # 1/(day degC)
    beta2: float = 0.0       # 1/day
    KE1: float = 0.2616      # g/(l degC)
    KE2: float = 38.90       # g/l
    KN: float = 0.1096       # g/l
    KS1: float = 29.5        # g/l
    KS2: float = 4.3262      # g/l
    KO: float = 0.0007       # g/l
    k1: float = 0.018
    k2: float = 1.86
    k3: float = 0.003
    k4: float = 0.0006
    kd: float = 0.01         # 1/day
    kd1: float = 99.86
    kd2: float = 0.0021      # l^2/(g^2 day)
    tol: float = 70.0        # g/l
    eps: float = 0.02

    def __post_init__(self):
        for name in ("mu1", "mu2", "beta1", "beta2", "KE1", "KE2", "k1",
                     "k2", "k3", "k4", "kd", "kd1", "kd2"):
            if getattr(self, name) < 0:
                raise ConfigError(f"kinetic.{name} must be >= 0")
        for name in ("KN", "KS1", "KS2", "KO"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"kinetic.{name} must be > 0")
        if self.eps <= 0:
            raise ConfigError("kinetic.eps must be > 0")
        if self.tol <= 0:
            raise ConfigError("kinetic.tol must be > 0")

    def check_temperature_range(self, T_low, T_high):
        """Raise ConfigError if a temperature-linear rate turns negative on
        [T_low, T_high]; the coefficients are linear in T, so checking the
        endpoints covers the interval."""
        for T in (T_low, T_high):
            try:
                mu_max(self, T)
                beta_max(self, T)
                K_E(self, T)
            except ModelValidityError as exc:
                raise ConfigError(str(exc)) from exc


@dataclass(frozen=True)
class DivisionParams:
    """Cell division parameters: division rate and daughter partitioning."""

    gamma: float = 200.0     # 1/day
    delta: float = 50.0      # 1/mass^2
    beta: float = 400.0      # 1/mass^2
    lam: float = None        # 1/mass, computed from beta when omitted
    m_t: float = 0.3784      # scaled transition mass
    m_d: float = 0.8525      # scaled division mass

    def __post_init__(self):
        if self.gamma <= 0 or self.delta <= 0 or self.beta <= 0:
            raise ConfigError("division.gamma, division.delta and division.beta must be > 0")
        if not 0.0 < self.m_t < self.m_d:
            raise ConfigError("division masses must satisfy 0 < m_t < m_d")
        if self.lam is None:
            object.__setattr__(self, "lam", compute_lambda(self.beta))
        elif self.lam <= 0:
            raise ConfigError("division.lambda must be > 0")


@dataclass(frozen=True)
class TemperatureProfile:
    """Piecewise-linear fermentation temperature: low, ramp, high."""

    T_low: float = 15.0
    T_high: float = 18.0
    t_ramp_start: float = 9.5
    t_ramp_end: float = 10.5
    t_final: float = 20.0

    def __post_init__(self):
        if not 0.0 <= self.t_ramp_start <= self.t_ramp_end <= self.t_final:
            raise ConfigError(
                "temperature profile requires 0 <= t_ramp_start <= t_ramp_end <= t_final")


def temperature(profile: TemperatureProfile, t: float) -> float:
    """Temperature in degC at time t (days)."""
    if t < 0.0 or t > profile.t_final:
        raise DomainError(f"t={t} outside [0, {profile.t_final}]")
    if t <= profile.t_ramp_start:
        return profile.T_low
    if t >= profile.t_ramp_end:
        return profile.T_high
    frac = (t - profile.t_ramp_start) / (profile.t_ramp_end - profile.t_ramp_start)
    return profile.T_low + frac * (profile.T_high - profile.T_low)


def mu_max(p: KineticParams, T: float) -> float:
    """Maximum specific growth rate mu1*T - mu2 (1/day)."""
    val = p.mu1 * T - p.mu2
    if val < 0:
        raise ModelValidityError(f"mu_max({T}) = {val} < 0")
    return val


def beta_max(p: KineticParams, T: float) -> float:
    """Maximum ethanol production rate beta1*T - beta2 (1/day)."""
    val = p.beta1 * T - p.beta2
    if val < 0:
        raise ModelValidityError(f"beta_max({T}) = {val} < 0")
    return val


def K_E(p: KineticParams, T: float) -> float:
    """Ethanol inhibition constant -KE1*T + KE2 (g/l)."""
    val = -p.KE1 * T + p.KE2
    if val < 0:
        raise ModelValidityError(f"K_E({T}) = {val} < 0")
    return val


def _check_nonneg(**conc):
    for name, val in conc.items():
        if val < 0:
            raise DomainError(f"{name} = {val} must be >= 0")


def growth_tilde_eps(p: KineticParams, N, S, O, T) -> float:
    """Per-unit-mass single-cell growth rate including the anaerobic floor eps."""
    _check_nonneg(N=N, S=S, O=O)
    return (mu_max(p, T) * N / (p.KN + N) * S / (p.KS1 + S)
            * (O / (p.KO + O) + p.eps))


def growth_tilde(p: KineticParams, N, S, O, T) -> float:
    """Per-unit-mass growth rate without the anaerobic floor (oxygen equation)."""
    _check_nonneg(N=N, S=S, O=O)
    return mu_max(p, T) * N / (p.KN + N) * S / (p.KS1 + S) * O / (p.KO + O)


def growth_rate_eps(p: KineticParams, m, N, S, O, T):
    """Single-cell growth rate r_eps(m, N, S, O); affine-linear in m."""
    return growth_tilde_eps(p, N, S, O, T) * m


def growth_rate(p: KineticParams, m, N, S, O, T):
    """Growth rate without eps; r <= r_eps pointwise."""
    return growth_tilde(p, N, S, O, T) * m


def ethanol_tilde(p: KineticParams, S, E, T) -> float:
    """Per-unit-mass ethanol accumulation rate."""
    _check_nonneg(S=S, E=E)
    ke = K_E(p, T)
    return beta_max(p, T) * S / (p.KS2 + S) * ke / (ke + E)


def ethanol_rate(p: KineticParams, m, S, E, T):
    """Ethanol accumulation rate q_E(m, S, E); proportional to m."""
    return ethanol_tilde(p, S, E, T) * m


def sugar_rate(p: KineticParams, m, N, S, E, O, T):
    """Sugar consumption rate q = k2*q_E + k3*r_eps."""
    return (p.k2 * ethanol_rate(p, m, S, E, T)
            + p.k3 * growth_rate_eps(p, m, N, S, O, T))


def death_phi(p: KineticParams, E):
    """Ethanol-related death rate Phi(E) (1/day); zero at E = tol."""
    d = np.asarray(E, dtype=float) - p.tol
    val = (0.5 + np.arctan(p.kd1 * d) / np.pi) * p.kd2 * d * d
    return float(val) if np.isscalar(E) else val


def death_phi_prime(p: KineticParams, E):
    """Derivative of the death function with respect to E."""
    d = np.asarray(E, dtype=float) - p.tol
    val = (p.kd1 * p.kd2 * d * d / (np.pi * (1.0 + p.kd1 ** 2 * d * d))
           + 2.0 * p.kd2 * d * (0.5 + np.arctan(p.kd1 * d) / np.pi))
    return float(val) if np.isscalar(E) else val


def partition(d: DivisionParams, m, m_prime):
    """Daughter-mass partitioning density p(m, m'); two Gaussian peaks.

    Vanishes unless m' > m and m' > m_t.  Satisfies the biomass symmetry
    p(m, m') = p(m' - m, m') exactly.  Accepts arrays (broadcast).
    """
    m = np.asarray(m, dtype=float)
    mp = np.asarray(m_prime, dtype=float)
    active = (mp > m) & (mp > d.m_t)
    val = d.lam * (np.exp(-d.beta * (m - d.m_t) ** 2)
                   + np.exp(-d.beta * (m - mp + d.m_t) ** 2))
    out = np.where(active, val, 0.0)
    return float(out) if out.ndim == 0 else out


def division_rate(d: DivisionParams, m):
    """Division rate (breakage frequency) Gamma(m); accepts arrays."""
    m = np.asarray(m, dtype=float)
    ramp = d.gamma * np.exp(-d.delta * (m - d.m_d) ** 2)
    out = np.where(m <= d.m_t, 0.0, np.where(m < d.m_d, ramp, d.gamma))
    return float(out) if out.ndim == 0 else out


def compute_lambda(beta: float) -> float:
    """Partition amplitude making the two-Gaussian density integrate to one."""
    if beta <= 0:
        raise DomainError("beta must be > 0")
    return 0.5 * math.sqrt(beta / math.pi)


def normalize_mass(value, from_lo, from_hi, to_lo, to_hi):
    """Rescale a mass value between intervals.

    Uses the span-ratio form (to_hi - to_lo)/(from_hi - from_lo) * (value
    - from_lo); the target offset is deliberately not added, matching how
    the reference values m_t = 0.3784 and m_d = 0.8525 were produced.
    """
    if from_hi <= from_lo:
        raise DomainError("source interval must have positive width")
    return (to_hi - to_lo) / (from_hi - from_lo) * (value - from_lo)
