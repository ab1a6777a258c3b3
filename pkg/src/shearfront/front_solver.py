"""Traveling-front boundary-value solver on a truncated cylinder.

Solves the amplitude-scaled front equation

    Lap_y U + A^{-2} U_xx + (gamma - alpha(y)) U_x + f(U) = 0

with U = 1 at x_min, U = 0 at x_max, U non-increasing in x, and the scaled
speed gamma determined together with U by pinning max_y U(0, y) = theta.
The pinning closes the square system: Newton runs on the bordered Jacobian
(profile unknowns plus gamma), with a smoothed max (log-sum-exp) while far
from the solution and an exact node pin for the endgame.  A semi-implicit
pseudo-time march in the co-moving frame, with gamma driven by the pinning
drift, rescues Newton when the line search stalls (which happens when the
ignition interface of the iterate sits between grid nodes).

Discretization: centered second differences for Lap_y and U_xx; the
advective term is one-sided second-order, biased per y-node by the sign of
(gamma - alpha(y)).  Reactions that switch on discontinuously at theta get
the mean-value convention f(theta) -> f(theta+)/2 within a tiny band; the
ignition interface is pinned to the node x = 0, and without the convention
the collocated reaction would lose an O(dx) strip of burning there, which
is the dominant speed error at practical resolutions.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import SolveError
from .flows import FlowProfile
from .grids import CylinderGrid
from .reactions import Reaction
from .spectral import principal_eigpair, torus_laplacian

JUMP_BAND = 1e-8  # |u - theta| band where the mean-value convention applies
INTERFACE_WIDTH = 1e-2  # u-width of the solver-side interface regularization

_DEBUG = bool(os.environ.get("SHEARFRONT_DEBUG"))

# number of scaled-front solves since import (used by cache tests)
SOLVE_COUNTER = {"solves": 0}


def _ramp(s):
    """C^1 switch on [0, 1] with unit integral (area-neutral regularization)."""
    s = np.clip(s, 0.0, 1.0)
    return s * s * (3.0 - 2.0 * s) + 15.0 * s * s * (1.0 - s) ** 2


def _ramp_prime(s):
    out = np.zeros_like(np.asarray(s, dtype=float))
    inside = (s > 0.0) & (s < 1.0)
    si = np.asarray(s)[inside]
    out[inside] = 6.0 * si * (1.0 - si) + 30.0 * si * (1.0 - si) * (1.0 - 2.0 * si)
    return out


def reaction_values(reaction: Reaction, u: np.ndarray) -> np.ndarray:
    """Reaction values as the solver collocates them.

    Discontinuous ignition switches are replaced on a sub-grid u-band of
    width INTERFACE_WIDTH by an area-neutral C^1 ramp (otherwise the
    collocated residual is discontinuous in the unknowns and Newton stalls
    whenever the ignition interface sits between grid nodes; area
    neutrality keeps the induced speed shift at O(width^2)).  At the
    pinned node, where u equals theta exactly, the mean-value convention
    f(theta+)/2 restores the half cell of burning that node-centered
    sampling would otherwise drop.
    """
    vals = reaction.f(u)
    if reaction.jump_at_theta:
        s = (u - reaction.theta) / INTERFACE_WIDTH
        vals = vals * _ramp(s)
        band = np.abs(u - reaction.theta) <= JUMP_BAND
        if band.any():
            vals = np.where(band, 0.5 * reaction.jump_at_theta, vals)
    return vals


def reaction_slopes(reaction: Reaction, u: np.ndarray) -> np.ndarray:
    """d/du of the collocated reaction (matching reaction_values)."""
    if not reaction.jump_at_theta:
        return reaction.df(u)
    s = (u - reaction.theta) / INTERFACE_WIDTH
    return reaction.df(u) * _ramp(s) + reaction.f(u) * _ramp_prime(s) / INTERFACE_WIDTH


@dataclass(frozen=True)
class SolveOptions:
    newton_tol: float = 1e-10
    max_newton: int = 50
    damping: float = 1.0
    pseudo_time_dt: float = 0.5
    tol_bc: float = 1e-6
    advection_scheme: str = "upwind2"  # "upwind2" | "centered"
    lse_sharpness: float = 1e3
    max_pseudo_steps: int = 3000
    max_rescues: int = 4

    def __post_init__(self):
        if not (0 < self.damping <= 1):
            raise ValueError("damping must lie in (0, 1]")
        if self.newton_tol <= 0 or self.pseudo_time_dt <= 0 or self.tol_bc <= 0:
            raise ValueError("tolerances and time step must be positive")
        if self.newton_tol >= self.tol_bc:
            raise ValueError("newton_tol must be below tol_bc")
        if self.advection_scheme not in ("upwind2", "centered"):
            raise ValueError(f"unknown advection scheme {self.advection_scheme!r}")


@dataclass(frozen=True)
class IdentityReport:
    """Integral identities satisfied by exact scaled fronts, on the grid."""

    reaction_integral: float
    gamma: float
    energy_lhs: float
    energy_rhs: float
    rel_err_reaction: float
    rel_err_energy: float

    def as_dict(self):
        return {
            "reaction_integral": self.reaction_integral,
            "gamma": self.gamma,
            "energy_lhs": self.energy_lhs,
            "energy_rhs": self.energy_rhs,
            "rel_err_reaction": self.rel_err_reaction,
            "rel_err_energy": self.rel_err_energy,
        }


@dataclass(frozen=True)
class FrontSolution:
    """Converged scaled front (gamma, U) with residual diagnostics."""

    gamma: float
    amplitude: float
    U: np.ndarray  # (n_x, m) with m the flattened torus size
    grid: CylinderGrid
    flow: FlowProfile
    reaction: Reaction
    residual_norm: float
    iterations: int
    pinned_column: int
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        self.U.setflags(write=False)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def max_over_y(self) -> np.ndarray:
        return self.U.max(axis=1)

    def validate(self, opts: SolveOptions):
        U = self.U
        if U.min() < -1e-9 or U.max() > 1.0 + 1e-9:
            raise SolveError(
                f"solution leaves [0,1]: min {U.min():.2e}, max {U.max():.2e}"
            )
        worst_increase = float(np.max(np.diff(U, axis=0)))
        if worst_increase > 1e-10:
            raise SolveError(f"monotonicity violated: max increase {worst_increase:.2e}")
        left = float(np.max(np.abs(U[1] - 1.0)))
        right = float(np.max(np.abs(U[-2])))
        if left > opts.tol_bc or right > opts.tol_bc:
            raise SolveError(
                f"domain too short: boundary flatness {left:.2e} / {right:.2e} "
                f"exceeds tol_bc {opts.tol_bc:.1e}"
            )
        i0 = self.grid.index_of_origin
        pin_err = abs(float(U[i0].max()) - self.reaction.theta)
        if pin_err > 1e-8:
            raise SolveError(f"speed pinning violated: |max_y U(0,.) - theta| = {pin_err:.2e}")
        if self.gamma <= 0:
            raise SolveError(f"nonpositive scaled speed gamma = {self.gamma:.3e}")


# ---------------------------------------------------------------------------
# discretization helpers


class _Discretization:
    """Padded-array residual pieces and cached interior sparse operators."""

    def __init__(self, grid: CylinderGrid, A: float, scheme: str):
        self.grid = grid
        self.A = A
        self.scheme = scheme
        self.m = grid.torus.num_points
        self.ni = grid.n_x - 2
        self.dx = grid.dx
        self.Ly = torus_laplacian(grid.torus.dim, grid.torus.points_per_dim)
        self._pattern_cache = {}

    # -- padded-array operators (rows 0 and n_x-1 hold boundary data)

    def lap_y(self, Up):
        return (self.Ly @ Up[1:-1].T).T

    def d2x(self, Up):
        return (Up[2:] - 2.0 * Up[1:-1] + Up[:-2]) / self.dx**2

    def dx_forward(self, Up):
        out = np.empty((self.ni, self.m))
        out[:-1] = (-3.0 * Up[1:-2] + 4.0 * Up[2:-1] - Up[3:]) / (2.0 * self.dx)
        out[-1] = (Up[-1] - Up[-2]) / self.dx
        return out

    def dx_backward(self, Up):
        out = np.empty((self.ni, self.m))
        out[1:] = (3.0 * Up[2:-1] - 4.0 * Up[1:-2] + Up[:-3]) / (2.0 * self.dx)
        out[0] = (Up[1] - Up[0]) / self.dx
        return out

    def dx_centered(self, Up):
        return (Up[2:] - Up[:-2]) / (2.0 * self.dx)

    def dx_upwind(self, Up, pos_mask):
        if self.scheme == "centered":
            return self.dx_centered(Up)
        df = self.dx_forward(Up)
        db = self.dx_backward(Up)
        return np.where(pos_mask[None, :], df, db)

    # -- interior sparse matrices

    def _dx_interior(self, kind: str) -> sp.csr_matrix:
        ni, dx = self.ni, self.dx
        M = sp.lil_matrix((ni, ni))
        if kind == "forward":
            for r in range(ni - 1):
                M[r, r] = -3.0 / (2 * dx)
                M[r, r + 1] = 4.0 / (2 * dx)
                if r + 2 <= ni - 1:
                    M[r, r + 2] = -1.0 / (2 * dx)
            M[ni - 1, ni - 1] = -1.0 / dx
        elif kind == "backward":
            M[0, 0] = 1.0 / dx
            for r in range(1, ni):
                M[r, r] = 3.0 / (2 * dx)
                M[r, r - 1] = -4.0 / (2 * dx)
                if r - 2 >= 0:
                    M[r, r - 2] = 1.0 / (2 * dx)
        else:  # centered
            for r in range(ni):
                if r - 1 >= 0:
                    M[r, r - 1] = -1.0 / (2 * dx)
                if r + 1 <= ni - 1:
                    M[r, r + 1] = 1.0 / (2 * dx)
        return M.tocsr()

    def linear_parts(self, pos_mask: np.ndarray):
        """(K0, DXP): interior Jacobian is K0 + gamma*DXP + diag(f'(U))."""
        key = pos_mask.tobytes()
        if key in self._pattern_cache:
            return self._pattern_cache[key]
        ni, m = self.ni, self.m
        Txx = sp.diags(
            [np.ones(ni - 1), -2.0 * np.ones(ni), np.ones(ni - 1)], [-1, 0, 1]
        ) / self.dx**2
        base = sp.kron(Txx, sp.identity(m)) * self.A**-2 + sp.kron(
            sp.identity(ni), self.Ly
        )
        if self.scheme == "centered":
            DXP = sp.kron(self._dx_interior("centered"), sp.identity(m)).tocsr()
        else:
            pos = sp.diags(pos_mask.astype(float))
            neg = sp.diags((~pos_mask).astype(float))
            DXP = (
                sp.kron(self._dx_interior("forward"), pos)
                + sp.kron(self._dx_interior("backward"), neg)
            ).tocsr()
        alpha_tile = np.tile(self._alpha, ni)
        K0 = (base - DXP.multiply(alpha_tile[:, None])).tocsr()
        self._pattern_cache[key] = (K0, DXP)
        return K0, DXP

    def set_flow(self, alpha_flat: np.ndarray):
        self._alpha = alpha_flat


def _padded(grid: CylinderGrid, interior: np.ndarray) -> np.ndarray:
    Up = np.empty((grid.n_x, interior.shape[1]))
    Up[0] = 1.0
    Up[-1] = 0.0
    Up[1:-1] = interior
    return Up


def _tanh_seed(grid: CylinderGrid, theta: float, width: float = 1.0) -> np.ndarray:
    x0 = np.log(theta / (1.0 - theta)) / width
    prof = 1.0 / (1.0 + np.exp(width * (grid.x - x0)))
    U = np.tile(prof[:, None], (1, grid.torus.num_points))
    U[0] = 1.0
    U[-1] = 0.0
    return U


def _rephase(Up: np.ndarray, i0: int, theta: float) -> np.ndarray:
    """Shift an initial guess by whole cells so its theta-level sits at x = 0."""
    row_max = Up.max(axis=1)
    above = np.nonzero(row_max >= theta)[0]
    if len(above) == 0 or len(above) == Up.shape[0]:
        return Up
    shift = i0 - int(above[-1])
    if shift == 0:
        return Up
    out = np.roll(Up, shift, axis=0)
    if shift > 0:
        out[:shift] = 1.0
    else:
        out[shift:] = 0.0
    out[0] = 1.0
    out[-1] = 0.0
    return out


def solve_front_scaled(
    A: float,
    flow: FlowProfile,
    reaction: Reaction,
    grid: CylinderGrid,
    init: Optional[FrontSolution] = None,
    opts: Optional[SolveOptions] = None,
    gamma0: Optional[float] = None,
) -> FrontSolution:
    """Solve the scaled front problem at amplitude A for (gamma, U)."""
    opts = opts or SolveOptions()
    if A < 1:
        raise ValueError("amplitude must be >= 1")
    if reaction.theta <= 0:
        raise ValueError("the boundary-value solver needs a positive ignition temperature")
    if flow.grid.shape != grid.torus.shape:
        raise ValueError("flow grid does not match the cylinder cross-section")

    SOLVE_COUNTER["solves"] += 1
    disc = _Discretization(grid, A, opts.advection_scheme)
    alpha = flow.flat()
    disc.set_flow(alpha)
    theta = reaction.theta
    i0 = grid.index_of_origin
    m, ni = disc.m, disc.ni
    s = opts.lse_sharpness

    if init is not None:
        if init.U.shape != grid.field_shape:
            raise ValueError("init solution shape does not match grid")
        Up = init.U.copy()
        gamma = init.gamma if gamma0 is None else gamma0
    else:
        Up = _tanh_seed(grid, theta)
        gamma = gamma0 if gamma0 is not None else 0.5 * flow.alpha_max + 1.0 / A
    Up = _rephase(Up, i0, theta)

    def residual(Up, gamma):
        a = gamma - alpha
        pos = a >= 0.0
        r = (
            disc.lap_y(Up)
            + disc.d2x(Up) / A**2
            + a[None, :] * disc.dx_upwind(Up, pos)
            + reaction_values(reaction, Up[1:-1])
        )
        return r, pos

    def pin_value(Up, mode, jstar):
        row = Up[i0]
        if mode == "lse":
            mx = row.max()
            return mx + np.log(np.exp(s * (row - mx)).sum()) / s - theta
        return row[jstar] - theta

    def pin_gradient(Up, mode, jstar):
        g = np.zeros(m)
        if mode == "lse":
            row = Up[i0]
            w = np.exp(s * (row - row.max()))
            g[:] = w / w.sum()
        else:
            g[jstar] = 1.0
        return g

    def merit(Up, gamma, mode, jstar):
        r, _ = residual(Up, gamma)
        return max(float(np.max(np.abs(r))), abs(pin_value(Up, mode, jstar)))

    def march(Up, gamma, steps):
        """Semi-implicit co-moving march rescuing a stalled Newton iteration.

        gamma is steered each step by the phase condition at the pinning
        node (the value that freezes the interface there), plus a gentle
        proportional term that drifts the profile until the pin is met.
        """
        dt = opts.pseudo_time_dt
        gamma_fact = gamma
        a = gamma - alpha
        K, DXP = disc.linear_parts(a >= 0.0)
        Klin = (K + gamma * DXP).tocsc()
        M = spla.splu((sp.identity(ni * m, format="csc") / dt - Klin).tocsc())
        for step in range(steps):
            r, pos = residual(Up, gamma)
            u = Up[1:-1].reshape(-1)
            nonstiff = r.reshape(-1) - Klin @ u
            u_new = M.solve(u / dt + nonstiff)
            Up = _padded(grid, u_new.reshape(ni, m))
            jmax = int(np.argmax(Up[i0]))
            dxu = disc.dx_upwind(Up, gamma - alpha >= 0.0)[i0 - 1, jmax]
            pin = float(Up[i0].max()) - theta
            if abs(dxu) > 1e-8:
                nonadv = (
                    disc.lap_y(Up)[i0 - 1, jmax]
                    + disc.d2x(Up)[i0 - 1, jmax] / A**2
                    + reaction_values(reaction, np.array([Up[i0, jmax]]))[0]
                )
                gamma_pc = float(alpha[jmax] - nonadv / dxu)
                gamma_new = gamma_pc + pin / (5.0 * max(abs(dxu), 1e-3))
                gamma_new = np.clip(gamma_new, gamma - 0.2, gamma + 0.2)
                gamma = 0.7 * gamma + 0.3 * float(gamma_new)
            if abs(gamma - gamma_fact) > 0.02 * max(1.0, abs(gamma_fact)) or np.any(
                (gamma - alpha >= 0.0) != pos
            ):
                gamma_fact = gamma
                K, DXP = disc.linear_parts(gamma - alpha >= 0.0)
                Klin = (K + gamma * DXP).tocsc()
                M = spla.splu((sp.identity(ni * m, format="csc") / dt - Klin).tocsc())
        return Up, gamma

    newton_iters = 0
    rescues = 0
    jstar = int(np.argmax(Up[i0]))
    diagnostics = {"rescues": 0, "phases": []}

    for mode in ("lse", "node"):
        target = max(opts.newton_tol, 1e-9) if mode == "lse" else opts.newton_tol
        polish_left = 1
        if mode == "node":
            # the pinned unknown is eliminated: it sits exactly at theta,
            # where the mean-value collocation of a discontinuous switch is
            # active; approaching theta gradually instead would cross the
            # collocation band and spike the residual mid-line-search.  For
            # a constant profile the solution is y-uniform and every column
            # crosses theta at x = 0, so the whole row is eliminated.
            jstar = int(np.argmax(Up[i0]))
            if flow.is_constant:
                Up[i0, :] = theta
            else:
                Up[i0, jstar] = theta
        while True:
            if newton_iters >= opts.max_newton + diagnostics["rescues"] * 10:
                raise SolveError(
                    f"Newton did not converge in {newton_iters} iterations",
                    residual=merit(Up, gamma, mode, jstar),
                )
            r, pos = residual(Up, gamma)
            N = pin_value(Up, mode, jstar)
            cur = max(float(np.max(np.abs(r))), abs(N))
            if _DEBUG:
                print(f"  [{mode}] it={newton_iters} merit={cur:.3e} gamma={gamma:.9f}")
            if cur <= target:
                if mode == "node" and polish_left and cur > 1e-13:
                    polish_left = 0  # one extra step sharpens the certificate
                else:
                    break
            K0, DXP = disc.linear_parts(pos)
            fp = reaction_slopes(reaction, Up[1:-1].reshape(-1))
            J = K0 + gamma * DXP + sp.diags(fp)
            dR_dgamma = disc.dx_upwind(Up, pos).reshape(-1)
            prow = np.zeros(ni * m)
            prow[(i0 - 1) * m : i0 * m] = pin_gradient(Up, mode, jstar)
            B = sp.bmat(
                [
                    [J, sp.csc_matrix(dR_dgamma[:, None])],
                    [sp.csc_matrix(prow[None, :]), None],
                ],
                format="csc",
            )
            rhs = np.concatenate([-r.reshape(-1), [-N]])
            try:
                delta = spla.splu(B).solve(rhs)
            except RuntimeError as exc:
                raise SolveError(f"bordered Jacobian factorization failed: {exc}")
            du = delta[:-1].reshape(ni, m)
            dgamma = float(delta[-1])
            newton_iters += 1

            step = opts.damping
            accepted = False
            while step >= 2.0**-16:
                Ut = _padded(grid, Up[1:-1] + step * du)
                if mode == "node":
                    if flow.is_constant:
                        Ut[i0, :] = theta
                    else:
                        Ut[i0, jstar] = theta
                gt = gamma + step * dgamma
                trial = merit(Ut, gt, mode, jstar)
                if trial <= cur * (1.0 - 1e-4 * step) or trial < opts.newton_tol:
                    Up, gamma = Ut, gt
                    accepted = True
                    break
                step *= 0.5
            if not accepted:
                if rescues >= opts.max_rescues:
                    raise SolveError(
                        "Newton stalled and pseudo-time rescues are exhausted",
                        residual=cur,
                    )
                rescues += 1
                diagnostics["rescues"] = rescues
                Up, gamma = march(Up, gamma, min(200, opts.max_pseudo_steps))
                Up = _rephase(Up, i0, theta)
                jstar = int(np.argmax(Up[i0]))
                if mode == "node":
                    Up[i0, jstar] = theta
        diagnostics["phases"].append((mode, newton_iters))

    r, _ = residual(Up, gamma)
    res_norm = float(np.max(np.abs(r)))
    sol = FrontSolution(
        gamma=float(gamma),
        amplitude=float(A),
        U=Up.copy(),
        grid=grid,
        flow=flow,
        reaction=reaction,
        residual_norm=res_norm,
        iterations=newton_iters,
        pinned_column=jstar,
        diagnostics=diagnostics,
    )
    sol.validate(opts)
    return sol


# ---------------------------------------------------------------------------
# solution audits


def _trapezoid_weights(grid: CylinderGrid) -> np.ndarray:
    wx = np.full(grid.n_x, grid.dx)
    wx[0] = wx[-1] = 0.5 * grid.dx
    return wx[:, None] * grid.torus.cell_volume()


def check_integral_identities(sol: FrontSolution) -> IdentityReport:
    """Reaction-mass and energy identities, trapezoid rule on the grid.

    Exact scaled fronts satisfy  iint f(U) = gamma  and
    iint(|grad_y U|^2 + A^{-2} U_x^2) = iint f(U) U - gamma/2;
    the discrete deviations are reported relative to gamma.
    """
    grid, U, A = sol.grid, sol.U, sol.amplitude
    w = _trapezoid_weights(grid)
    fvals = reaction_values(sol.reaction, U)
    reaction_integral = float(np.sum(w * fvals))

    shape = (grid.n_x,) + grid.torus.shape
    Us = U.reshape(shape)
    dy = grid.torus.spacing
    grad2 = np.zeros_like(U)
    for axis in range(1, grid.torus.dim + 1):
        gy = (np.roll(Us, -1, axis=axis) - np.roll(Us, 1, axis=axis)) / (2.0 * dy)
        grad2 += (gy**2).reshape(U.shape)
    ux = np.gradient(U, grid.dx, axis=0)
    energy_lhs = float(np.sum(w * (grad2 + ux**2 / A**2)))
    energy_rhs = float(np.sum(w * fvals * U) - sol.gamma / 2.0)

    denom = max(abs(sol.gamma), 1e-12)
    return IdentityReport(
        reaction_integral=reaction_integral,
        gamma=sol.gamma,
        energy_lhs=energy_lhs,
        energy_rhs=energy_rhs,
        rel_err_reaction=abs(reaction_integral - sol.gamma) / denom,
        rel_err_energy=abs(energy_lhs - energy_rhs) / denom,
    )


@dataclass(frozen=True)
class BarrierReport:
    ok: bool
    violations: int
    min_slack: float
    worst_node: tuple
    margins: np.ndarray  # min over y of (barrier - U) per x >= 0 node
    mu_at_lambda: float


def check_exponential_barrier(
    sol: FrontSolution, lambda_lower: float, atol: float = 1e-9
) -> BarrierReport:
    """Verify U(x, y) <= exp(-lambda x) phi(y) on x >= 0.

    phi is the positive principal eigenfunction of
    Lap_y + lambda^2/A^2 - lambda (gamma - alpha), scaled to min phi = theta;
    its eigenvalue is <= 0 whenever lambda is at most the solution's decay
    rate, which makes the product a supersolution ahead of the front.  atol
    guards float round-off at the pinning node where the two sides touch.
    """
    A, gamma, flow = sol.amplitude, sol.gamma, sol.flow
    pot = (lambda_lower / A) ** 2 - lambda_lower * (gamma - flow.alpha)
    eig = principal_eigpair(1.0, pot)
    phi = eig.eigenfunction.reshape(-1) * sol.reaction.theta  # min phi = theta
    i0 = sol.grid.index_of_origin
    x_tail = sol.grid.x[i0:]
    barrier = np.exp(-lambda_lower * x_tail)[:, None] * phi[None, :]
    slack = barrier - sol.U[i0:]
    violations = int(np.sum(slack < -atol))
    kmin = np.unravel_index(int(np.argmin(slack)), slack.shape)
    return BarrierReport(
        ok=violations == 0,
        violations=violations,
        min_slack=float(slack.min()),
        worst_node=(int(kmin[0]) + i0, int(kmin[1])),
        margins=slack.min(axis=1),
        mu_at_lambda=float(eig.eigenvalue),
    )


# ---------------------------------------------------------------------------
# continuation


@dataclass(frozen=True)
class SweepEntry:
    A: float
    c_star: float
    gamma_star_A: float
    gamma_meanzero: float
    identity: IdentityReport
    wall_time: float
    solution: Optional[FrontSolution] = None


@dataclass(frozen=True)
class SpeedCurve:
    """Per-amplitude record of front speeds along a continuation sweep."""

    entries: tuple
    failures: tuple = ()
    fitted_gamma: Optional[float] = None
    fit_residual: Optional[float] = None

    def amplitudes(self):
        return np.array([e.A for e in self.entries])

    def gamma_stars(self):
        return np.array([e.gamma_star_A for e in self.entries])

    def c_stars(self):
        return np.array([e.c_star for e in self.entries])

    def with_fit(self, fitted_gamma: float, fit_residual: float) -> "SpeedCurve":
        return replace(self, fitted_gamma=fitted_gamma, fit_residual=fit_residual)


def continuation_in_A(
    A_list,
    flow: FlowProfile,
    reaction: Reaction,
    grid: CylinderGrid,
    opts: Optional[SolveOptions] = None,
    grid_policy: str = "fixed",
    keep_solutions: bool = True,
    gamma0: Optional[float] = None,
) -> SpeedCurve:
    """Sweep ascending amplitudes, warm-starting each solve from the last.

    grid_policy "fixed" reuses the given grid for every amplitude (the right
    choice when the scaled profile stays order-one wide, i.e. for genuinely
    sheared flows).  "inverse_amplitude" shrinks the x-extent like 1/A,
    which keeps the effective unscaled resolution constant; profiles map
    between consecutive grids by exact nodal copy, since the grids coincide
    in the unscaled variable.  Use it when the scaled profile narrows like
    1/A (flows with vanishing asymptotic speed, e.g. constant profiles).
    """
    A_arr = list(A_list)
    if any(a2 <= a1 for a1, a2 in zip(A_arr, A_arr[1:])):
        raise ValueError("A_list must be strictly ascending")
    if A_arr[0] < 1:
        raise ValueError("amplitudes must be >= 1")
    if grid_policy not in ("fixed", "inverse_amplitude"):
        raise ValueError(f"unknown grid policy {grid_policy!r}")
    opts = opts or SolveOptions()

    entries = []
    failures = []
    prev: Optional[FrontSolution] = None
    for A in A_arr:
        g = grid if grid_policy == "fixed" else grid.scaled(A_arr[0] / A)
        init = None
        if prev is not None:
            # nodal copy: for inverse_amplitude grids this is the exact
            # unscaled-coordinate transport of the previous profile
            init = replace(prev, grid=g, U=prev.U.copy())
        t0 = time.perf_counter()
        try:
            sol = solve_front_scaled(A, flow, reaction, g, init=init, opts=opts,
                                     gamma0=None if prev is not None else gamma0)
        except SolveError as exc:
            failures.append({"A": A, "error": str(exc)})
            break
        wall = time.perf_counter() - t0
        ident = check_integral_identities(sol)
        entries.append(
            SweepEntry(
                A=float(A),
                c_star=float(A * (sol.gamma + flow.beta)),
                gamma_star_A=float(sol.gamma + flow.beta),
                gamma_meanzero=float(sol.gamma),
                identity=ident,
                wall_time=wall,
                solution=sol if keep_solutions else None,
            )
        )
        prev = sol
    return SpeedCurve(entries=tuple(entries), failures=tuple(failures))
