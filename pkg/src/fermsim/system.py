"""Semidiscrete right-hand side f(t, y) of the coupled system and its Jacobian.

State layout: y = (w_0 .. w_{C-1}, N, E, S, O).  Densities w are in
10^6 cells/ml per unit scaled mass; with that unit the substrate moment
sum(centers * w * dm) is the biomass concentration in g/l and the
tabulated yield coefficients apply without conversion factors.

Advection uses the first-order upwind flux with the growth velocity
evaluated at cell edges; the domain boundaries carry zero inflow (left)
and zero outflow (right) fluxes.  The substrate sums run over interior
cells i = 1 .. C-2 only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import NumericsError
from .kinetics import (
    KineticParams,
    TemperatureProfile,
    K_E,
    beta_max,
    death_phi,
    death_phi_prime,
    mu_max,
    temperature,
)
from .operator import DiscreteOperator


@dataclass
class SystemState:
    """Full unknown vector at one time instant."""

    w: np.ndarray
    N: float
    E: float
    S: float
    O: float
    t: float = 0.0

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.w, [self.N, self.E, self.S, self.O]])

    @classmethod
    def from_vector(cls, y: np.ndarray, t: float = 0.0) -> "SystemState":
        return cls(w=np.array(y[:-4]), N=float(y[-4]), E=float(y[-3]),
                   S=float(y[-2]), O=float(y[-1]), t=t)


def _rate_factors(kp: KineticParams, N, E, S, O, T):
    """Per-unit-mass rates and their state derivatives at one point.

    Michaelis factors are evaluated directly (no domain check) so that
    Newton iterates may transiently leave the physical region.
    """
    mu = mu_max(kp, T)
    bm = beta_max(kp, T)
    ke = K_E(kp, T)

    gN = N / (kp.KN + N)
    gS1 = S / (kp.KS1 + S)
    gS2 = S / (kp.KS2 + S)
    gO = O / (kp.KO + O)
    gKE = ke / (ke + E)

    dgN = kp.KN / (kp.KN + N) ** 2
    dgS1 = kp.KS1 / (kp.KS1 + S) ** 2
    dgS2 = kp.KS2 / (kp.KS2 + S) ** 2
    dgO = kp.KO / (kp.KO + O) ** 2
    dgKE = -ke / (ke + E) ** 2

    rt_eps = mu * gN * gS1 * (gO + kp.eps)
    rt = mu * gN * gS1 * gO
    qE = bm * gS2 * gKE

    return {
        "rt_eps": rt_eps,
        "rt": rt,
        "qE": qE,
        "drt_eps": (mu * dgN * gS1 * (gO + kp.eps),      # d/dN
                    mu * gN * dgS1 * (gO + kp.eps),      # d/dS
                    mu * gN * gS1 * dgO),                # d/dO
        "drt": (mu * dgN * gS1 * gO,
                mu * gN * dgS1 * gO,
                mu * gN * gS1 * dgO),
        "dqE_dS": bm * dgS2 * gKE,
        "dqE_dE": bm * gS2 * dgKE,
    }


def rhs_vector(t: float, y: np.ndarray, op: DiscreteOperator,
               kp: KineticParams, profile: TemperatureProfile) -> np.ndarray:
    """Time derivative of the packed state vector."""
    if not np.all(np.isfinite(y)):
        bad = np.flatnonzero(~np.isfinite(y))
        raise NumericsError(f"non-finite state entries at indices {bad[:8].tolist()} (t={t})")
    grid = op.grid
    C = grid.n_cells
    w = y[:C]
    N, E, S, O = y[C], y[C + 1], y[C + 2], y[C + 3]
    T = temperature(profile, t)
    fac = _rate_factors(kp, N, E, S, O, T)
    phi = death_phi(kp, E)

    v = fac["rt_eps"] * grid.edges          # edge velocities, C+1
    flux = np.zeros(C + 1)
    flux[1:C] = v[1:C] * w[:C - 1]          # upwind; zero in/outflow at ends

    wdot = ((-(flux[1:] - flux[:-1]) + 2.0 * (op.K @ w) - op.gamma_int * w)
            / grid.dm - (phi + kp.kd) * w)

    moment = grid.dm * float(np.dot(grid.centers[1:C - 1], w[1:C - 1]))
    Ndot = -kp.k1 * fac["rt_eps"] * moment
    Edot = fac["qE"] * moment
    Sdot = -(kp.k2 * fac["qE"] + kp.k3 * fac["rt_eps"]) * moment
    Odot = -kp.k4 * fac["rt"] * moment

    out = np.empty_like(y)
    out[:C] = wdot
    out[C:] = (Ndot, Edot, Sdot, Odot)
    return out


def jacobian_vector(t: float, y: np.ndarray, op: DiscreteOperator,
                    kp: KineticParams, profile: TemperatureProfile) -> np.ndarray:
    """Analytic Jacobian of :func:`rhs_vector` with respect to y."""
    if not np.all(np.isfinite(y)):
        bad = np.flatnonzero(~np.isfinite(y))
        raise NumericsError(f"non-finite state entries at indices {bad[:8].tolist()} (t={t})")
    grid = op.grid
    C = grid.n_cells
    e = grid.edges
    dm = grid.dm
    w = y[:C]
    N, E, S, O = y[C], y[C + 1], y[C + 2], y[C + 3]
    T = temperature(profile, t)
    fac = _rate_factors(kp, N, E, S, O, T)
    phi = death_phi(kp, E)
    dphi = death_phi_prime(kp, E)

    J = np.zeros((C + 4, C + 4))

    # densities block: birth kernel plus upwind transport and loss terms
    J[:C, :C] = (2.0 / dm) * op.K
    diag = np.arange(C)
    J[diag, diag] -= op.gamma_int / dm + phi + kp.kd
    J[diag[:-1], diag[:-1]] -= fac["rt_eps"] * e[1:C] / dm   # outflow, not in last cell
    J[diag[1:], diag[:-1]] += fac["rt_eps"] * e[1:C] / dm    # inflow from the left

    # net upwind flux divided by rt_eps; carries the velocity derivatives
    G = e[1:] * w
    G[-1] = 0.0
    G[1:] -= e[1:C] * w[:C - 1]

    dN, dS, dO = fac["drt_eps"]
    J[:C, C] = -(G / dm) * dN
    J[:C, C + 1] = -dphi * w
    J[:C, C + 2] = -(G / dm) * dS
    J[:C, C + 3] = -(G / dm) * dO

    # substrate rows; moment sums over interior cells only
    ci = grid.centers.copy()
    ci[0] = 0.0
    ci[-1] = 0.0
    cw = ci * dm
    moment = float(np.dot(ci, w)) * dm

    J[C, :C] = -kp.k1 * fac["rt_eps"] * cw
    J[C, C] = -kp.k1 * moment * dN
    J[C, C + 2] = -kp.k1 * moment * dS
    J[C, C + 3] = -kp.k1 * moment * dO

    J[C + 1, :C] = fac["qE"] * cw
    J[C + 1, C + 1] = moment * fac["dqE_dE"]
    J[C + 1, C + 2] = moment * fac["dqE_dS"]

    J[C + 2, :C] = -(kp.k2 * fac["qE"] + kp.k3 * fac["rt_eps"]) * cw
    J[C + 2, C] = -kp.k3 * moment * dN
    J[C + 2, C + 1] = -kp.k2 * moment * fac["dqE_dE"]
    J[C + 2, C + 2] = -moment * (kp.k2 * fac["dqE_dS"] + kp.k3 * dS)
    J[C + 2, C + 3] = -kp.k3 * moment * dO

    rN, rS, rO = fac["drt"]
    J[C + 3, :C] = -kp.k4 * fac["rt"] * cw
    J[C + 3, C] = -kp.k4 * moment * rN
    J[C + 3, C + 2] = -kp.k4 * moment * rS
    J[C + 3, C + 3] = -kp.k4 * moment * rO

    return J


def rhs(state: SystemState, op: DiscreteOperator, kp: KineticParams,
        profile: TemperatureProfile) -> SystemState:
    """d(state)/dt as a :class:`SystemState` (the t field carries state.t)."""
    dy = rhs_vector(state.t, state.to_vector(), op, kp, profile)
    return SystemState.from_vector(dy, t=state.t)


def jacobian(state: SystemState, op: DiscreteOperator, kp: KineticParams,
             profile: TemperatureProfile) -> np.ndarray:
    return jacobian_vector(state.t, state.to_vector(), op, kp, profile)
