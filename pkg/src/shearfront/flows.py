"""Shear-flow profiles on the torus: mean splitting and non-degeneracy checks.

A shear flow enters the front equation only through its x-component alpha(y).
All solvers work with the mean-zero part; the removed mean beta shifts any
computed speed by amplitude * beta, so it is stored alongside.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .grids import TorusGrid

# relative tolerance on the grid mean of the mean-zero part
MEAN_ZERO_RTOL = 1e-12


@dataclass(frozen=True)
class FlowProfile:
    """Mean-zero shear profile alpha on a torus grid plus its removed mean."""

    grid: TorusGrid
    alpha: np.ndarray
    beta: float
    alpha_min: float = field(init=False)
    alpha_max: float = field(init=False)

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        if a.shape != self.grid.shape:
            raise ValueError(f"alpha shape {a.shape} != grid shape {self.grid.shape}")
        scale = max(1.0, float(np.max(np.abs(a))) if a.size else 1.0)
        mean = float(a.mean())
        if abs(mean) > MEAN_ZERO_RTOL * scale:
            raise ValueError(f"alpha is not mean-zero: grid mean {mean:.3e}")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "alpha_min", float(a.min()))
        object.__setattr__(self, "alpha_max", float(a.max()))

    @property
    def is_constant(self) -> bool:
        return self.alpha_max - self.alpha_min == 0.0

    def flat(self) -> np.ndarray:
        """alpha as a flat vector in row-major torus ordering."""
        return self.alpha.reshape(-1)

    def raw(self) -> np.ndarray:
        """Reconstruct the original (non-centered) profile."""
        return self.alpha + self.beta

    def shifted(self, delta: float) -> "FlowProfile":
        """Profile raised pointwise by a constant: only beta changes."""
        return FlowProfile(self.grid, self.alpha, self.beta + delta)


def normalize_flow(grid: TorusGrid, raw_profile: np.ndarray) -> FlowProfile:
    """Split a raw profile into its mean-zero part and the removed mean.

    Any speed computed with the mean-zero part recovers the full-flow speed
    via c = c_meanzero + amplitude * beta.
    """
    raw = np.asarray(raw_profile, dtype=float)
    if raw.shape != grid.shape:
        raise ValueError(f"profile shape {raw.shape} != grid shape {grid.shape}")
    bad = ~np.isfinite(raw)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise ValueError(f"non-finite profile value at node {idx}")
    beta = float(raw.mean())
    alpha = raw - beta
    # one re-centering pass keeps the grid mean at the roundoff floor
    alpha = alpha - alpha.mean()
    return FlowProfile(grid, alpha, beta)


def check_nondegeneracy(flow: FlowProfile, r: int):
    """Test whether some y-derivative of alpha up to order r is nonzero everywhere.

    Uses trigonometric (FFT) differentiation and sums |D^z alpha| over all
    multi-indices 1 <= |z| <= r.  Returns (ok, worst_node, min_sum) where
    worst_node minimizes the sum.
    """
    grid = flow.grid
    n = grid.points_per_dim
    if r < 1:
        raise ValueError("derivative order r must be >= 1")
    if r > n // 2:
        raise ValueError(f"order r={r} unresolvable on {n} points per dim")
    if n < 16:
        raise ValueError("need >= 16 points per dim for spectral differentiation")

    a_hat = np.fft.fftn(flow.alpha)
    k = 2j * np.pi * np.fft.fftfreq(n, d=1.0 / n)  # d/dy symbol, unit period

    total = np.zeros(grid.shape)
    for zeta in product(range(r + 1), repeat=grid.dim):
        order = sum(zeta)
        if not 1 <= order <= r:
            continue
        sym = np.ones(grid.shape, dtype=complex)
        for axis, z in enumerate(zeta):
            if z == 0:
                continue
            shape = [1] * grid.dim
            shape[axis] = n
            sym = sym * (k**z).reshape(shape)
        deriv = np.fft.ifftn(a_hat * sym).real
        total += np.abs(deriv)

    tol = 1e-8 * max(np.abs(flow.alpha).max(), 0.0)
    worst_flat = int(np.argmin(total))
    worst = tuple(int(i) for i in np.unravel_index(worst_flat, grid.shape))
    min_sum = float(total.reshape(-1)[worst_flat])
    return min_sum > tol, worst, min_sum


# ---------------------------------------------------------------------------
# builtin profiles

def zero_profile(grid: TorusGrid) -> np.ndarray:
    return np.zeros(grid.shape)


def cosine_profile(grid: TorusGrid, k: int = 1, amplitude: float = 1.0) -> np.ndarray:
    """amplitude * cos(2 pi k y) in the first torus coordinate."""
    y = grid.coordinates()[0]
    return amplitude * np.cos(2 * np.pi * k * y)


def two_mode_profile(
    grid: TorusGrid,
    a1: float = 1.0,
    a2: float = 0.5,
    k1: int = 1,
    k2: int = 2,
) -> np.ndarray:
    """Two cosine modes; on a 2-torus the second mode lives on the second axis."""
    coords = grid.coordinates()
    y1 = coords[0]
    y2 = coords[-1]
    return a1 * np.cos(2 * np.pi * k1 * y1) + a2 * np.cos(2 * np.pi * k2 * y2)


BUILTIN_PROFILES = {
    "zero": zero_profile,
    "cosine": cosine_profile,
    "two_mode": two_mode_profile,
}


def builtin_flow(name: str, grid: TorusGrid, **params) -> FlowProfile:
    if name == "custom":
        values = np.asarray(params["values"], dtype=float).reshape(grid.shape)
        return normalize_flow(grid, values)
    try:
        builder = BUILTIN_PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown builtin flow {name!r}") from None
    return normalize_flow(grid, builder(grid, **params))
