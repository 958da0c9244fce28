"""Periodic grids, grid functions and the discrete operator calculus.

The unknowns live as cell values on a uniform periodic grid of J cells
covering [0, L].  All difference operators (forward, backward, centered,
second difference) wrap periodically.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on [0, L] with J cells of width dx = L/J."""

    length: float
    num_cells: int

    def __post_init__(self):
        if self.num_cells < 4:
            raise ValueError(f"need at least 4 cells, got {self.num_cells}")
        if self.length <= 0:
            raise ValueError(f"domain length must be positive, got {self.length}")

    @property
    def dx(self) -> float:
        return self.length / self.num_cells

    def cell_centers(self, origin: float = 0.0) -> np.ndarray:
        """Midpoints of the J cells, offset by `origin` (for domains [-L, L])."""
        return origin + (np.arange(self.num_cells) + 0.5) * self.dx


@dataclass(frozen=True)
class GridFunction:
    """Real field of J cell values on a periodic grid."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.num_cells,):
            raise ValueError(
                f"expected {self.grid.num_cells} values, got shape {vals.shape}"
            )
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def is_finite(self) -> bool:
        return bool(np.all(np.isfinite(self.values)))

    def with_values(self, values: np.ndarray) -> "GridFunction":
        return GridFunction(self.grid, values)


def zeros(grid: Grid) -> GridFunction:
    return GridFunction(grid, np.zeros(grid.num_cells))


def _same_grid(v: GridFunction, w: GridFunction) -> None:
    if v.grid != w.grid:
        raise ValueError("grid functions live on different grids")


def shift(v: GridFunction, direction: int) -> GridFunction:
    """Shift operator S_+ (direction=+1) or S_- (direction=-1): result_j = v_{j±1}."""
    if direction not in (1, -1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    return v.with_values(np.roll(v.values, -direction))


def d_plus(v: GridFunction) -> GridFunction:
    """Forward difference D+ v = (S+ v - v)/dx."""
    return v.with_values((np.roll(v.values, -1) - v.values) / v.grid.dx)


def d_minus(v: GridFunction) -> GridFunction:
    """Backward difference D- v = (v - S- v)/dx."""
    return v.with_values((v.values - np.roll(v.values, 1)) / v.grid.dx)


def d_center(v: GridFunction) -> GridFunction:
    """Centered difference D v = (S+ v - S- v)/(2 dx)."""
    return v.with_values((np.roll(v.values, -1) - np.roll(v.values, 1)) / (2 * v.grid.dx))


def laplacian(v: GridFunction) -> GridFunction:
    """Second difference D+ D- v = (v_{j+1} - 2 v_j + v_{j-1})/dx^2."""
    vals = v.values
    return v.with_values(
        (np.roll(vals, -1) - 2 * vals + np.roll(vals, 1)) / v.grid.dx**2
    )


def inner(v: GridFunction, w: GridFunction) -> float:
    """Weighted scalar product dx * sum_j v_j w_j.

    Accumulates left-to-right over j so the result is run-to-run deterministic.
    """
    _same_grid(v, w)
    return v.grid.dx * float(sum(v.values * w.values))


def l2_norm(v: GridFunction) -> float:
    return inner(v, v) ** 0.5


def linf_norm(v: GridFunction) -> float:
    return float(np.max(np.abs(v.values)))


def pointwise_mul(v: GridFunction, w: GridFunction) -> GridFunction:
    """Elementwise product (vw)_j = v_j w_j."""
    _same_grid(v, w)
    return v.with_values(v.values * w.values)
