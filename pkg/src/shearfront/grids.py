"""Uniform grids on the flat torus and on a truncated cylinder R x T^d."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class TorusGrid:
    """Uniform periodic grid on the unit torus T^dim, dim in {1, 2}.

    Nodes sit at j / points_per_dim along each axis; the period is 1 in
    every direction, so node points_per_dim wraps back to node 0.
    """

    dim: int
    points_per_dim: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"torus dim must be 1 or 2, got {self.dim}")
        if self.points_per_dim < 8:
            raise ValueError(f"need >= 8 points per dim, got {self.points_per_dim}")

    @property
    def spacing(self) -> float:
        return 1.0 / self.points_per_dim

    @property
    def num_points(self) -> int:
        return self.points_per_dim**self.dim

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.points_per_dim,) * self.dim

    def axis_coordinates(self) -> np.ndarray:
        return np.arange(self.points_per_dim) * self.spacing

    def coordinates(self) -> tuple[np.ndarray, ...]:
        """Meshgrid coordinate arrays, shape == self.shape."""
        axes = [self.axis_coordinates() for _ in range(self.dim)]
        return tuple(np.meshgrid(*axes, indexing="ij"))

    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def refined(self, factor: int = 2) -> "TorusGrid":
        return TorusGrid(self.dim, self.points_per_dim * factor)


@dataclass(frozen=True)
class CylinderGrid:
    """Truncated cylinder [x_min, x_max] x T^dim with x = 0 a grid node."""

    torus: TorusGrid
    x_min: float
    x_max: float
    n_x: int
    _x: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.x_min < 0.0 < self.x_max):
            raise ValueError(f"need x_min < 0 < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_x < 64:
            raise ValueError(f"need n_x >= 64, got {self.n_x}")
        x = np.linspace(self.x_min, self.x_max, self.n_x)
        i0 = int(np.argmin(np.abs(x)))
        if abs(x[i0]) > 1e-9 * self.dx:
            raise ValueError(
                "x = 0 must be a grid node (nearest node at "
                f"x = {x[i0]:.3e}); adjust x_min/x_max/n_x"
            )
        x[i0] = 0.0
        x.setflags(write=False)
        object.__setattr__(self, "_x", x)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_x - 1)

    @property
    def x(self) -> np.ndarray:
        return self._x

    @property
    def index_of_origin(self) -> int:
        return int(np.argmin(np.abs(self._x)))

    @property
    def field_shape(self) -> tuple[int, int]:
        """Shape of a field stored as (x index, flattened torus index)."""
        return (self.n_x, self.torus.num_points)

    def scaled(self, factor: float) -> "CylinderGrid":
        """Same node count with the x extent multiplied by `factor`."""
        return CylinderGrid(self.torus, self.x_min * factor, self.x_max * factor, self.n_x)

    def refined(self, factor: int = 2) -> "CylinderGrid":
        """Halve spacings `factor` times is factor=2**k; keeps x = 0 nodal."""
        return CylinderGrid(
            self.torus.refined(factor), self.x_min, self.x_max, factor * (self.n_x - 1) + 1
        )
