"""Precomputed division/partition kernel matrix and per-cell division integrals.

K[i, j] is the double integral of p(m, m') * Gamma(m') over cell_i x cell_j,
gamma_int[i] the integral of Gamma over cell_i; both via the composite
trapezoidal rule (tensor-product in the 2D case).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .grid import MassGrid
from .kinetics import DivisionParams, division_rate, partition


@dataclass(frozen=True)
class DiscreteOperator:
    K: np.ndarray = field(repr=False)           # (C, C), mass/day
    gamma_int: np.ndarray = field(repr=False)   # (C,), mass/day
    grid: MassGrid
    n_quad: int


def _cell_nodes_weights(grid: MassGrid, n_quad: int):
    """Trapezoid nodes (C, n_quad+1) and weights (n_quad+1,) per cell."""
    rel = np.linspace(0.0, 1.0, n_quad + 1)
    nodes = grid.edges[:-1, None] + grid.dm * rel[None, :]
    weights = np.full(n_quad + 1, grid.dm / n_quad)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    return nodes, weights


def assemble_operator(grid: MassGrid, d: DivisionParams, n_quad: int = 30) -> DiscreteOperator:
    """Assemble the kernel matrix and division integrals on ``grid``."""
    if n_quad < 2:
        raise ConfigError("n_quad must be >= 2")
    nodes, wq = _cell_nodes_weights(grid, n_quad)
    C = grid.n_cells

    gamma_nodes = division_rate(d, nodes)          # (C, q+1)
    gamma_int = gamma_nodes @ wq                   # (C,)

    m_flat = nodes.reshape(-1)                     # (C*(q+1),)
    K = np.empty((C, C))
    for j in range(C):
        # inner: integrate p(m, m') Gamma(m') over cell j for every m node
        pk = partition(d, m_flat[:, None], nodes[j][None, :])
        inner = pk @ (gamma_nodes[j] * wq)         # (C*(q+1),)
        K[:, j] = inner.reshape(C, -1) @ wq
    return DiscreteOperator(K=K, gamma_int=gamma_int, grid=grid, n_quad=n_quad)
