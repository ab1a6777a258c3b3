"""Principal eigenpairs of t*Lap + V on the torus and KPP speed formulas.

The default discretization is second-order centered finite differences;
a dense trigonometric (Fourier) variant is available for validation.
Principal pairs are computed by shifted inverse power iteration.  The
initial shift max(V) + 1 makes the shifted operator an M-matrix, so the
iteration preserves positivity of the eigenfunction; the shift is then
tightened adaptively (still above the top eigenvalue) to accelerate
convergence when the spectral gap is small.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .errors import EigenError
from .flows import FlowProfile
from .grids import TorusGrid

DEFAULT_EIG_TOL = 1e-9


@lru_cache(maxsize=32)
def _laplacian_1d(n: int) -> sp.csr_matrix:
    dy = 1.0 / n
    main = -2.0 * np.ones(n)
    off = np.ones(n - 1)
    L = sp.diags([off, main, off], [-1, 0, 1], format="lil")
    L[0, n - 1] = 1.0
    L[n - 1, 0] = 1.0
    return (L / dy**2).tocsr()


@lru_cache(maxsize=32)
def torus_laplacian(dim: int, n: int) -> sp.csr_matrix:
    """Sparse FD Laplacian on the flat torus, row-major node ordering."""
    L1 = _laplacian_1d(n)
    if dim == 1:
        return L1
    eye = sp.identity(n, format="csr")
    return (sp.kron(L1, eye) + sp.kron(eye, L1)).tocsr()


@lru_cache(maxsize=8)
def spectral_laplacian_dense(dim: int, n: int) -> np.ndarray:
    """Dense trigonometric-differentiation Laplacian (validation variant)."""
    k = np.fft.fftfreq(n, d=1.0 / n)
    sym1 = -(2.0 * np.pi * k) ** 2
    D1 = np.real(np.fft.ifft(sym1[:, None] * np.fft.fft(np.eye(n), axis=0), axis=0))
    D1 = 0.5 * (D1 + D1.T)
    if dim == 1:
        return D1
    eye = np.eye(n)
    return np.kron(D1, eye) + np.kron(eye, D1)


@dataclass(frozen=True)
class EigenResult:
    """Principal eigenvalue with its positive eigenfunction (min node = 1)."""

    eigenvalue: float
    eigenfunction: np.ndarray
    iterations: int
    residual: float


def _as_potential(V) -> np.ndarray:
    v = np.asarray(V, dtype=float)
    if v.ndim not in (1, 2):
        raise ValueError("potential must be a 1-D or 2-D torus field")
    return v


def principal_eigpair(
    t: float,
    V,
    tol: float = DEFAULT_EIG_TOL,
    max_iter: int = 20000,
    discretization: str = "fd",
) -> EigenResult:
    """Largest eigenvalue of t*Lap + V on the torus with positive eigenfunction.

    For t = 0 the operator is multiplication by V: the eigenvalue is max V
    and the returned "eigenfunction" is the indicator of the maximizing
    nodes (no positive eigenfunction exists for non-constant V).
    """
    if t < 0:
        raise ValueError("diffusivity t must be nonnegative")
    v2 = _as_potential(V)
    shape = v2.shape
    v = v2.reshape(-1)
    m = v.size

    if t == 0.0:
        top = float(v.max())
        phi = (v == top).astype(float)
        return EigenResult(top, phi.reshape(shape), 0, 0.0)

    dim = v2.ndim
    n = shape[0]
    if discretization == "fd":
        L = torus_laplacian(dim, n)
        Op = (t * L + sp.diags(v)).tocsr()

        def make_solver(sigma):
            return spla.splu((sigma * sp.identity(m, format="csc") - Op.tocsc()))
    elif discretization == "spectral":
        from types import SimpleNamespace

        Ld = spectral_laplacian_dense(dim, n)
        Op = t * Ld + np.diag(v)

        def make_solver(sigma):
            lu = scipy.linalg.lu_factor(sigma * np.eye(m) - Op)
            return SimpleNamespace(solve=lambda b: scipy.linalg.lu_solve(lu, b))
    else:
        raise ValueError(f"unknown discretization {discretization!r}")

    def apply_op(x):
        return Op @ x

    sigma = float(v.max()) + 1.0
    x = np.ones(m)
    mu = float(x @ apply_op(x)) / m
    resid = float(np.max(np.abs(apply_op(x) - mu * x)))
    if resid <= tol:
        phi = x / x.min()
        return EigenResult(mu, phi.reshape(shape), 0, resid)

    total_iters = 0
    refactors = 0
    scale = max(1.0, abs(float(v.max())), t * 4.0 * n * n)
    while refactors < 60 and total_iters < max_iter:
        solver = make_solver(sigma)
        refactors += 1
        prev_resid = np.inf
        since_factor = 0
        while total_iters < max_iter:
            y = solver.solve(x)
            total_iters += 1
            since_factor += 1
            if y.min() <= 0.0:
                # shift fell at or below the top eigenvalue; widen and refactor
                sigma = mu + 4.0 * max(sigma - mu, 1e-8 * scale)
                break
            x = y / y.max()
            opx = apply_op(x)
            mu = float(x @ opx) / float(x @ x)
            resid = float(np.max(np.abs(opx - mu * x)))
            if resid <= tol:
                phi = x / x.min()
                return EigenResult(mu, phi.reshape(shape), total_iters, resid)
            rate = resid / prev_resid if np.isfinite(prev_resid) else 0.0
            prev_resid = resid
            if rate > 0.5 and since_factor >= 5:
                # slow contraction: tighten the shift toward the eigenvalue
                sigma = mu + max(4.0 * resid, 1e-13 * scale)
                break
    raise EigenError(
        f"eigen iteration not converged after {total_iters} iterations "
        f"(residual {resid:.3e})",
        residual=resid,
    )


def rayleigh_gradient_ratio(w: np.ndarray, dim: int, n: int) -> float:
    """Discrete ||grad w||^2 / ||w||^2 using the FD torus Laplacian."""
    L = torus_laplacian(dim, n)
    wf = w.reshape(-1)
    return float(wf @ (-(L @ wf))) / float(wf @ wf)


def mu_of_lambda(lam: float, A: float, gamma: float, flow: FlowProfile) -> float:
    """Principal eigenvalue of Lap_y + lam^2/A^2 - lam (gamma - alpha(y)).

    The constant part of the potential is factored out so that mu(0) = 0
    holds exactly and constant flows reproduce the closed form
    mu = lam^2/A^2 - lam*gamma at roundoff level.
    """
    const = (lam / A) ** 2 - lam * gamma
    if flow.is_constant:
        return const
    res = principal_eigpair(1.0, lam * flow.alpha)
    return const + res.eigenvalue


def decay_rate(
    A: float,
    gamma: float,
    flow: FlowProfile,
    tol: float = 1e-10,
) -> float:
    """Unique positive root of mu(lam) = 0 for mean-zero flow and gamma > 0.

    mu is convex with mu(0) = 0, mu'(0) = -gamma < 0 and grows like
    (lam/A)^2, so exactly one positive root exists; it controls the
    exponential tail of the front ahead of the ignition region.
    """
    if gamma <= 0:
        raise ValueError("decay_rate requires gamma > 0")
    if A < 1:
        raise ValueError("amplitude must be >= 1")

    def mu(lam):
        return mu_of_lambda(lam, A, gamma, flow)

    lam_ref = gamma * A * A  # exact root for constant profiles
    lam_max = 10.0 * lam_ref
    hi = lam_ref
    while mu(hi) <= 0.0:
        hi *= 2.0
        if hi > lam_max:
            raise EigenError(
                f"no sign change of mu up to lam = {lam_max:.3e}; inconsistent inputs"
            )
    lo = hi / 2.0
    while mu(lo) >= 0.0:
        lo /= 2.0
        if lo < 1e-12 * lam_ref:
            raise EigenError("could not bracket the decay-rate root")
    from scipy.optimize import brentq

    root = brentq(mu, lo, hi, xtol=1e-14, rtol=4e-16, maxiter=200)
    val = mu(root)
    if abs(val) > tol:
        raise EigenError(f"decay-rate root not resolved: |mu| = {abs(val):.2e}")
    return float(root)


def kpp_minimal_speed(
    A: float,
    flow: FlowProfile,
    fprime0: float,
    rel_tol: float = 1e-8,
) -> float:
    """Minimal KPP front speed at finite amplitude from the linearization.

    c* = min over lam > 0 of (k_A(lam) + f'(0)) / lam with k_A(lam) the
    principal eigenvalue of Lap_y + lam^2 + lam A alpha(y).  Returned for
    the mean-zero profile; the caller adds A*beta for a non-centered flow.
    Minimization is a coarse log-lambda scan followed by golden-section.
    """
    if fprime0 <= 0:
        raise ValueError("fprime0 must be positive")
    if A < 0:
        raise ValueError("amplitude must be nonnegative")

    def k_var(lam):
        if flow.is_constant or A == 0.0:
            return 0.0
        return principal_eigpair(1.0, lam * A * flow.alpha).eigenvalue

    def h(loglam):
        lam = np.exp(loglam)
        return (lam * lam + k_var(lam) + fprime0) / lam

    lo, hi = -6.0 * np.log(10.0), 6.0 * np.log(10.0)
    grid = np.linspace(lo, hi, 61)
    vals = [h(g) for g in grid]
    i = int(np.argmin(vals))
    if i in (0, len(grid) - 1):
        raise EigenError(
            "no interior minimum bracketed on the lambda scan: endpoint values "
            f"h(1e-6) = {vals[0]:.6e}, h(1e6) = {vals[-1]:.6e}"
        )
    a, b = grid[i - 1], grid[i + 1]
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = h(c), h(d)
    while (b - a) > rel_tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = h(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = h(d)
    return float(min(fc, fd))


def kpp_limit_speed(
    flow: FlowProfile,
    fprime0: float,
    t_floor: float = 1e-8,
    tol: float = 1e-12,
    full_output: bool = False,
):
    """Large-amplitude limit of c*/A for KPP reactions, by Lagrange-dual sweep.

    Maximizes int(alpha w^2)/int(w^2) over torus fields with
    ||grad w||^2 <= f'(0) ||w||^2.  For diffusivity t let (nu(t), w_t) be
    the principal pair of t*Lap + alpha; g(t) = ||grad w_t||^2/||w_t||^2
    decreases in t, and at the multiplier t* where g(t*) = f'(0) the dual
    and primal values coincide:

        gamma* = nu(t*) + t* f'(0).

    If even the smallest resolvable t leaves g below f'(0) the constraint
    is inactive and the value at the floor is returned, flagged.
    """
    if fprime0 <= 0:
        raise ValueError("fprime0 must be positive")
    info = {"constraint_active": True, "evaluations": 0, "g_history": []}

    if flow.is_constant:
        info["constraint_active"] = False
        info["t_star"] = None
        return (0.0, info) if full_output else 0.0

    dim, n = flow.grid.dim, flow.grid.points_per_dim

    def eval_tg(t):
        res = principal_eigpair(t, flow.alpha)
        g = rayleigh_gradient_ratio(res.eigenfunction, dim, n)
        info["evaluations"] += 1
        info["g_history"].append((t, g))
        return res.eigenvalue, g

    def check_monotone():
        hist = sorted(info["g_history"])
        for (t1, g1), (t2, g2) in zip(hist, hist[1:]):
            if g2 > g1 + 1e-9 * (1.0 + abs(g1)):
                raise EigenError(
                    "dual sweep inconsistency: g(t) not decreasing "
                    f"(g({t1:.3e}) = {g1:.6e}, g({t2:.3e}) = {g2:.6e})"
                )

    nu_lo, g_lo = eval_tg(t_floor)
    if g_lo <= fprime0:
        info["constraint_active"] = False
        info["t_star"] = t_floor
        value = nu_lo + t_floor * fprime0
        return (value, info) if full_output else value

    t_hi = 1.0
    nu_hi, g_hi = eval_tg(t_hi)
    while g_hi > fprime0:
        t_hi *= 4.0
        if t_hi > 1e12:
            raise EigenError("failed to bracket the dual multiplier")
        nu_hi, g_hi = eval_tg(t_hi)
    check_monotone()

    t_lo = t_floor
    for _ in range(200):
        t_mid = np.sqrt(t_lo * t_hi)
        nu_mid, g_mid = eval_tg(t_mid)
        if g_mid > fprime0:
            t_lo = t_mid
        else:
            t_hi = t_mid
        if t_hi / t_lo < 1.0 + tol:
            break
    check_monotone()
    t_star = np.sqrt(t_lo * t_hi)
    res = principal_eigpair(t_star, flow.alpha)
    g_star = rayleigh_gradient_ratio(res.eigenfunction, dim, n)
    value = res.eigenvalue + t_star * fprime0
    info.update(t_star=float(t_star), g_at_t_star=float(g_star))
    return (value, info) if full_output else float(value)


def small_amplitude_slope(flow: FlowProfile, fprime0: float) -> float:
    """Closed-form limit slope for weak reactions.

    Equals 2 sqrt(f'(0)) times the supremum of int(alpha w)/||grad w||
    over mean-zero w; the maximizer is w = (-Lap)^{-1} alpha, giving
    2 sqrt(f'(0)) * sqrt(sum_{k != 0} |alpha_hat_k|^2 / (4 pi^2 |k|^2)).
    """
    if fprime0 < 0:
        raise ValueError("fprime0 must be nonnegative")
    a = flow.alpha
    n = flow.grid.points_per_dim
    hat = np.fft.fftn(a) / a.size
    k = np.fft.fftfreq(n, d=1.0 / n)
    if flow.grid.dim == 1:
        k2 = k**2
    else:
        k2 = k[:, None] ** 2 + k[None, :] ** 2
    mask = k2 > 0
    s = float(np.sum(np.abs(hat[mask]) ** 2 / (4.0 * np.pi**2 * k2[mask])))
    return 2.0 * np.sqrt(fprime0) * np.sqrt(s)
