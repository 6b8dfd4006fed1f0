"""Uniform cell-mass mesh for the finite-volume discretization."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class MassGrid:
    m_min: float
    m_max: float
    n_cells: int
    edges: np.ndarray = field(repr=False)
    centers: np.ndarray = field(repr=False)
    dm: float


def build_grid(m_min: float, m_max: float, n_cells: int) -> MassGrid:
    """Uniform mesh of ``n_cells`` control volumes on [m_min, m_max]."""
    if n_cells < 3:
        raise ConfigError("grid needs at least 3 cells")
    if m_max <= m_min:
        raise ConfigError("grid requires m_max > m_min")
    edges = np.linspace(m_min, m_max, n_cells + 1)
    centers = 0.5 * (edges[:-1] + edges[1:])
    dm = (m_max - m_min) / n_cells
    return MassGrid(m_min=m_min, m_max=m_max, n_cells=n_cells,
                    edges=edges, centers=centers, dm=dm)
