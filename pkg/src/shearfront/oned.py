"""One-dimensional front speeds by phase-plane shooting.

For an ignition-type reaction (theta > 0) the traveling wave
u'' + c u' + f(u) = 0, u(-inf) = 1, u(+inf) = 0 has a unique speed.
Writing p(u) = -u' > 0 along the decreasing profile gives

    dp/du = c - f(u)/p,      p(theta) = c * theta,

where the boundary value comes from the exact exponential tail ahead of
the ignition point.  The speed is the unique c for which p stays positive
on (theta, 1) and vanishes at u = 1: too small a c makes p crash before
reaching 1, too large a c leaves p(1) > 0.  Bisection on that dichotomy
is robust and independent of any spatial discretization.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import solve_ivp

from .reactions import Reaction


def _survives(reaction: Reaction, c: float, rtol: float, atol: float) -> bool:
    """True iff p(u) stays positive up to u = 1 at speed c."""
    theta = reaction.theta

    def rhs(u, p):
        return c - float(reaction.f(np.array([u]))[0]) / p[0]

    def hit_zero(u, p):
        return p[0] - 1e-15

    hit_zero.terminal = True
    hit_zero.direction = -1
    sol = solve_ivp(
        rhs,
        (theta, 1.0),
        [c * theta],
        events=hit_zero,
        rtol=rtol,
        atol=atol,
        max_step=(1.0 - theta) / 50.0,
    )
    return sol.status == 0


def front_speed_1d(
    reaction: Reaction,
    tol: float = 1e-11,
    rtol: float = 1e-11,
    atol: float = 1e-14,
) -> float:
    """Unique 1-D front speed of an ignition-type reaction by bisection."""
    if reaction.theta <= 0.0:
        raise ValueError("shooting requires a positive ignition temperature")
    lo, hi = 1e-8, 1.0
    for _ in range(60):
        if _survives(reaction, hi, rtol, atol):
            break
        hi *= 2.0
    else:
        raise RuntimeError("failed to bracket the front speed from above")
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if _survives(reaction, mid, rtol, atol):
            hi = mid
        else:
            lo = mid
        if hi - lo < tol:
            break
    return 0.5 * (lo + hi)


def front_profile_quadratures(reaction: Reaction, c: float, n: int = 20000):
    """Quadratures of the continuum profile in the phase plane.

    Integrates p(u) at speed c and returns (int f dx, int f*u dx,
    int (u')^2 dx) over the whole line, using dx = -du/p.  The tail ahead
    of the ignition point contributes exactly c*theta^2/2 to the last
    integral and nothing to the first two.
    """
    theta = reaction.theta

    def rhs(u, p):
        return c - float(reaction.f(np.array([u]))[0]) / p[0]

    us = np.linspace(theta, 1.0 - 1e-9, n)
    sol = solve_ivp(
        rhs, (theta, us[-1]), [c * theta], t_eval=us, rtol=1e-11, atol=1e-14,
        max_step=(1.0 - theta) / 50.0,
    )
    if sol.status != 0:
        raise RuntimeError("profile integration failed; is c the front speed?")
    p = sol.y[0]
    fvals = reaction.f(us)
    int_f = float(np.trapz(fvals / p, us))
    int_fu = float(np.trapz(fvals * us / p, us))
    # int (u')^2 dx = int p du over (0,1); ahead of theta: p = c u exactly
    int_p = float(np.trapz(p, us)) + c * theta**2 / 2.0
    return int_f, int_fu, int_p
