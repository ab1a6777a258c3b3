"""Routes to the asymptotic scaled speed gamma* and certificate bounds.

Three independent routes are provided:

* vanishing viscosity: sweep the amplitude upward (the A^{-2} U_xx term is
  exactly the vanishing-viscosity regularization of the degenerate front
  equation) and Richardson-extrapolate the scaled speeds in 1/A^2;
* cutoff limit: for a zero-ignition-temperature reaction, compute the
  viscosity-route value for the smoothly cut-off reactions and send the
  cutoff height to zero;
* the constrained-Rayleigh-quotient formula for KPP reactions, evaluated
  in the spectral module.

The cutoff route converges slowly: cut-off pulled fronts approach the
uncut speed like 1/ln^2(theta'), so the extrapolation fits an inverse-log
polynomial c - K2/L^2 + K3/L^3 in L = |ln theta'| rather than a geometric
tail (a geometric fit calibrated on the closed-form one-dimensional case
underestimates the limit several times worse).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import SolveError
from .flows import FlowProfile
from .front_solver import (
    FrontSolution,
    SolveOptions,
    SpeedCurve,
    _Discretization,
    continuation_in_A,
    reaction_values,
    _trapezoid_weights,
)
from .grids import CylinderGrid
from .reactions import Reaction, make_cutoff


@dataclass(frozen=True)
class GammaStarEstimate:
    """An estimate of gamma* with its route, uncertainty and raw data."""

    value: float
    route: str  # sweep_extrapolation | vanishing_viscosity | cutoff_limit | kpp_formula
    error_bar: float
    diagnostics: dict = field(default_factory=dict)

    def as_dict(self):
        return {
            "value": self.value,
            "route": self.route,
            "error_bar": self.error_bar,
            "diagnostics": self.diagnostics,
        }


def _richardson_in_inverse_A2(A: np.ndarray, g: np.ndarray):
    """Extrapolate g(A) = g_inf + c/A^2 from the last two sweep entries."""
    ratio = (A[-1] / A[-2]) ** 2
    return float(g[-1] + (g[-1] - g[-2]) / (ratio - 1.0))


def gamma_star_by_viscosity(
    flow: FlowProfile,
    reaction: Reaction,
    grid: CylinderGrid,
    A_schedule: Sequence[float],
    opts: Optional[SolveOptions] = None,
    grid_policy: str = "fixed",
    curve: Optional[SpeedCurve] = None,
):
    """gamma* by large-amplitude continuation and 1/A^2 Richardson extrapolation.

    Returns (estimate, limit_profile) where the limit profile is the
    converged front at the largest amplitude, the natural approximation of
    the degenerate-problem profile.  A non-1/A^2 decay of the sweep
    differences (ratio test outside [2.5, 6] for doubling schedules) or an
    oscillating tail inflates the error bar and sets a warning flag
    instead of failing.
    """
    if reaction.theta <= 0:
        raise ValueError("viscosity route requires an ignition-type reaction")
    A_arr = np.asarray(list(A_schedule), dtype=float)
    if len(A_arr) < 2:
        raise ValueError("A_schedule needs at least two amplitudes")

    if curve is None or [e.A for e in curve.entries] != list(A_arr):
        curve = continuation_in_A(
            A_arr, flow, reaction, grid, opts=opts, grid_policy=grid_policy
        )
    if len(curve.entries) < 2:
        raise SolveError(
            f"viscosity sweep truncated after {len(curve.entries)} entries",
            diagnostics={"failures": list(curve.failures)},
        )

    g = np.array([e.gamma_meanzero for e in curve.entries])
    A_done = np.array([e.A for e in curve.entries])
    extrap = _richardson_in_inverse_A2(A_done, g)
    error_bar = abs(float(g[-1]) - extrap)

    flags = []
    diffs = np.diff(g)
    ratios = []
    if len(g) >= 3:
        with np.errstate(divide="ignore", invalid="ignore"):
            ratios = [
                float(diffs[k] / diffs[k + 1]) if diffs[k + 1] != 0 else math.inf
                for k in range(len(diffs) - 1)
            ]
        doubling = np.allclose(A_done[1:] / A_done[:-1], 2.0)
        if doubling and ratios and not (2.5 <= ratios[-1] <= 6.0):
            flags.append("ratio_test_failed")
            error_bar = max(error_bar, abs(float(diffs[-1])))
        if np.any(np.sign(diffs[:-1]) * np.sign(diffs[1:]) < 0):
            flags.append("oscillating_tail")
            error_bar = max(error_bar, float(np.max(np.abs(diffs))))

    inside = 0.0 < extrap < flow.alpha_max if not flow.is_constant else None
    limit_sol = curve.entries[-1].solution
    est = GammaStarEstimate(
        value=extrap + flow.beta,
        route="vanishing_viscosity",
        error_bar=error_bar,
        diagnostics={
            "A_schedule": [float(a) for a in A_done],
            "gamma_star_A": [float(x) for x in g],
            "difference_ratios": ratios,
            "flags": flags,
            "strictly_inside_bounds": inside,
            "failures": list(curve.failures),
        },
    )
    return est, limit_sol


def limit_identity_check(sol: FrontSolution, gamma: float, reaction: Reaction) -> dict:
    """Integral identities of the degenerate-limit profile.

    For mean-zero flow, int_T (gamma - alpha) dy = gamma must equal
    iint f(U); additionally no reaction mass may sit on the half-line
    right of the last point where max_y U reaches theta.
    """
    w = _trapezoid_weights(sol.grid)
    total = float(np.sum(w * reaction_values(reaction, sol.U)))
    gap = abs(total - gamma) / max(abs(gamma), 1e-12)

    theta = reaction.theta
    row_max = sol.U.max(axis=1)
    above = np.nonzero(row_max >= theta - 1e-12)[0]
    if len(above):
        a_index = int(above[-1])
        tail = float(np.sum(w[a_index:] * reaction.f(sol.U[a_index:])))
        a_value = float(sol.grid.x[a_index])
    else:
        a_index, tail, a_value = -1, 0.0, math.nan

    no_front = total <= 1e-10
    report = {
        "gamma": float(gamma),
        "reaction_integral": total,
        "rel_gap": gap,
        "half_line_start": a_value,
        "half_line_integral": tail,
        "no_front": bool(no_front),
    }
    if no_front and gamma > 1e-10:
        report["contradiction"] = (
            "reaction integral vanishes while gamma > 0: no front present"
        )
    return report


# ---------------------------------------------------------------------------
# cutoff route


def _loglaw_extrapolate(theta_primes: np.ndarray, values: np.ndarray):
    """Fit v = c - K2/L^2 + K3/L^3, L = |ln theta'|, through the last 3 points."""
    L = np.abs(np.log(theta_primes[-3:]))
    M = np.vstack([np.ones(3), -1.0 / L**2, 1.0 / L**3]).T
    coef = np.linalg.solve(M, values[-3:])
    return float(coef[0]), coef


def _loglaw_lsq(theta_primes: np.ndarray, values: np.ndarray, npts: int):
    L = np.abs(np.log(theta_primes[-npts:]))
    M = np.vstack([np.ones(npts), -1.0 / L**2, 1.0 / L**3]).T
    coef, *_ = np.linalg.lstsq(M, values[-npts:], rcond=None)
    return float(coef[0])


def _geometric_extrapolate(values: np.ndarray):
    d1, d2 = values[-2] - values[-3], values[-1] - values[-2]
    if d1 == 0 or not 0 < d2 / d1 < 1:
        return float(values[-1])
    r = d2 / d1
    return float(values[-1] + d2 * r / (1.0 - r))


def gamma_star_by_cutoff(
    flow: FlowProfile,
    reaction: Reaction,
    theta_prime_list: Sequence[float],
    grid: CylinderGrid,
    A_schedule: Sequence[float],
    opts: Optional[SolveOptions] = None,
    grid_policy: str = "fixed",
) -> GammaStarEstimate:
    """gamma* for a zero-ignition-temperature reaction via cutoff speeds.

    Runs the viscosity route for each cut-off reaction (theta' descending),
    checks that the values rise monotonically as the cutoff is removed, and
    extrapolates theta' -> 0 with the inverse-log model.  The error bar
    combines the extrapolation-window sensitivity with the per-theta'
    amplitude-extrapolation bars.
    """
    if reaction.theta != 0:
        raise ValueError("cutoff route requires a zero-ignition-temperature reaction")
    tps = np.asarray(list(theta_prime_list), dtype=float)
    if len(tps) < 3:
        raise ValueError("need at least three cutoff heights to extrapolate")
    if np.any(np.diff(tps) >= 0):
        raise ValueError("theta_prime_list must be strictly descending")
    if tps[0] > 0.25 or tps[-1] <= 0:
        raise ValueError("cutoff heights must lie in (0, 1/4]")

    values, bars, per_tp = [], [], []
    for tp in tps:
        cut = make_cutoff(reaction, float(tp))
        est, _ = gamma_star_by_viscosity(
            flow, cut, grid, A_schedule, opts=opts, grid_policy=grid_policy
        )
        values.append(est.value - flow.beta)
        bars.append(est.error_bar)
        per_tp.append(est.diagnostics)

    values = np.array(values)
    bars = np.array(bars)
    for k in range(len(values) - 1):
        slack = max(1e-6, bars[k] + bars[k + 1])
        if values[k + 1] < values[k] - slack:
            raise SolveError(
                "cutoff speeds failed to increase as theta' decreases "
                f"(theta'={tps[k]:g} -> {tps[k + 1]:g}: "
                f"{values[k]:.6f} -> {values[k + 1]:.6f}); "
                "the sweep is under-resolved",
                diagnostics={"theta_primes": tps.tolist(), "values": values.tolist()},
            )

    extrap, coef = _loglaw_extrapolate(tps, values)
    window_alt = (
        _loglaw_lsq(tps, values, 4) if len(values) >= 4 else _geometric_extrapolate(values)
    )
    geometric = _geometric_extrapolate(values)
    error_bar = abs(extrap - window_alt) + float(np.max(bars[-3:])) + 1e-6

    return GammaStarEstimate(
        value=extrap + flow.beta,
        route="cutoff_limit",
        error_bar=error_bar,
        diagnostics={
            "theta_primes": tps.tolist(),
            "values": values.tolist(),
            "viscosity_error_bars": bars.tolist(),
            "loglaw_coefficients": [float(c) for c in coef],
            "loglaw_window_alt": window_alt,
            "geometric_extrapolation": geometric,
            "extrapolation_model": "c - K2/ln^2 + K3/|ln|^3 (last three points)",
            "per_theta_prime": per_tp,
        },
    )


# ---------------------------------------------------------------------------
# min-max certificate


def certificate_upper_bound(
    w,
    A: float,
    flow: FlowProfile,
    reaction: Reaction,
    grid: Optional[CylinderGrid] = None,
    margin_frac: float = 0.05,
    wx_floor: float = 1e-8,
) -> float:
    """Desk certificate: sup of (Lap_y w + A^{-2} w_xx + f(w))/(-w_x) + alpha.

    Any smooth strictly x-decreasing profile connecting 1 to 0 provides an
    upper bound for the scaled speed through this quotient; plugging in a
    converged front recovers its gamma exactly (node by node) when the
    same difference stencils are used, so the returned number doubles as a
    consistency check.  The evaluation window drops margin_frac of the
    x-range at each end and nodes where |w_x| falls below wx_floor, where
    the truncated tails make the quotient unstable.
    """
    if isinstance(w, FrontSolution):
        grid = w.grid
        Up = w.U
        scheme = w.diagnostics.get("advection_scheme", "upwind2")
        pos_mask = (w.gamma - flow.flat()) >= 0.0
    else:
        if grid is None:
            raise ValueError("grid is required when w is a plain array")
        Up = np.asarray(w, dtype=float)
        if Up.shape != grid.field_shape:
            raise ValueError("candidate profile shape does not match grid")
        scheme = "centered"
        pos_mask = None

    disc = _Discretization(grid, A, scheme)
    disc.set_flow(flow.flat())
    lap = disc.lap_y(Up)
    d2x = disc.d2x(Up)
    if scheme == "centered" or pos_mask is None:
        wx = disc.dx_centered(Up)
    else:
        wx = disc.dx_upwind(Up, pos_mask)
    fvals = reaction_values(reaction, Up[1:-1])

    n_x = grid.n_x
    margin = max(1, int(math.ceil(margin_frac * n_x)))
    lo = max(margin, 1)
    hi = min(n_x - margin, n_x - 1)
    rows = slice(lo - 1, hi - 1)  # interior-row indexing

    wx_win = wx[rows]
    if np.any(wx_win >= 0.0):
        raise ValueError(
            "candidate profile is not strictly decreasing inside the window"
        )
    mask = np.abs(wx_win) >= wx_floor
    if not mask.any():
        raise ValueError("no window nodes with |w_x| above the floor")

    quotient = (lap[rows] + d2x[rows] / A**2 + fvals[rows]) / (-wx_win)
    quotient = quotient + flow.flat()[None, :]
    return float(np.max(quotient[mask]))
