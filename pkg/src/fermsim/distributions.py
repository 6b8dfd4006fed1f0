"""Initial cell-number-density profiles, normalized to a total cell count.

Four shapes: constant, beta, small-to-medium plateau, and a two-Gaussian
("two normal peak") profile.  Shapes are sampled at cell centers and then
renormalized discretely so the finite-volume total matches the requested
count exactly (the count is given in cells/ml; densities are returned in
the same unit per scaled mass).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .grid import MassGrid

KINDS = ("constant", "beta", "small_to_medium", "two_normal_peak")


@dataclass(frozen=True)
class DistributionSpec:
    kind: str = "constant"
    total_cells: float = 1e6         # cells/ml
    # beta shape
    beta_a: float = 2.0
    beta_b: float = 5.0
    # small_to_medium: plateau up to `cutoff`, smoothstep decay over `smoothness`
    cutoff: float = 0.3784
    smoothness: float = 0.4741
    # two_normal_peak: means/stds default to 0.25*m_max and 0.6*m_max when None
    mean1: float = None
    mean2: float = None
    std1: float = 0.05
    std2: float = 0.05
    weight: float = 0.5              # weight of the second peak

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown distribution kind {self.kind!r}; "
                              f"expected one of {KINDS}")
        if self.total_cells <= 0:
            raise ConfigError("distribution.total_cells must be > 0")
        if self.beta_a <= 0 or self.beta_b <= 0:
            raise ConfigError("beta distribution needs beta_a, beta_b > 0")
        if self.cutoff <= 0 or self.smoothness <= 0:
            raise ConfigError("small_to_medium needs cutoff, smoothness > 0")
        if self.std1 <= 0 or self.std2 <= 0:
            raise ConfigError("two_normal_peak needs positive standard deviations")
        if not 0.0 <= self.weight <= 1.0:
            raise ConfigError("two_normal_peak weight must lie in [0, 1]")


def _shape(spec: DistributionSpec, grid: MassGrid) -> np.ndarray:
    m = grid.centers
    if spec.kind == "constant":
        return np.ones_like(m)
    if spec.kind == "beta":
        x = (m - grid.m_min) / (grid.m_max - grid.m_min)
        return x ** (spec.beta_a - 1.0) * (1.0 - x) ** (spec.beta_b - 1.0)
    if spec.kind == "small_to_medium":
        u = np.clip((m - spec.cutoff) / spec.smoothness, 0.0, 1.0)
        return 1.0 - u * u * (3.0 - 2.0 * u)
    # two_normal_peak
    mu1 = spec.mean1 if spec.mean1 is not None else 0.25 * grid.m_max
    mu2 = spec.mean2 if spec.mean2 is not None else 0.6 * grid.m_max
    g1 = np.exp(-0.5 * ((m - mu1) / spec.std1) ** 2) / spec.std1
    g2 = np.exp(-0.5 * ((m - mu2) / spec.std2) ** 2) / spec.std2
    return (1.0 - spec.weight) * g1 + spec.weight * g2


def build_initial_density(spec: DistributionSpec, grid: MassGrid) -> np.ndarray:
    """Density vector with sum(w * dm) == total_cells (cells/ml)."""
    shape = _shape(spec, grid)
    if np.any(shape < 0):
        raise ConfigError("initial distribution shape produced negative values")
    total = float(np.sum(shape) * grid.dm)
    if total <= 0:
        raise ConfigError("initial distribution integrates to zero on this grid")
    return shape * (spec.total_cells / total)
