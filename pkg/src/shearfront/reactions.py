"""Reaction nonlinearities: ignition, KPP, and smoothly cut-off variants.

Every reaction vanishes on [0, theta] and at 1, is positive on (theta, 1),
and is extended by zero outside [0, 1] so solvers may evaluate it on
slightly out-of-range iterates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

_N_VALIDATE = 1000


def _bump(s):
    """exp(-1/s) for s > 0, zero otherwise (all derivatives vanish at 0)."""
    s = np.asarray(s, dtype=float)
    out = np.zeros_like(s)
    pos = s > 0
    out[pos] = np.exp(-1.0 / s[pos])
    return out


def smooth_step(v):
    """Smooth non-decreasing switch: 0 for v <= 1, 1 for v >= 2."""
    v = np.asarray(v, dtype=float)
    a = _bump(v - 1.0)
    b = _bump(2.0 - v)
    return a / (a + b + np.where((a + b) == 0, 1.0, 0.0))


def smooth_step_derivative(v):
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    # derivative supported strictly inside (1, 2); guard the underflow edges
    inside = (v > 1.0 + 1e-3) & (v < 2.0 - 1e-3)
    s = v[inside]
    a = np.exp(-1.0 / (s - 1.0))
    b = np.exp(-1.0 / (2.0 - s))
    da = a / (s - 1.0) ** 2
    db = -b / (2.0 - s) ** 2
    out[inside] = (da * b - a * db) / (a + b) ** 2
    return out


@dataclass(frozen=True)
class Reaction:
    """Nonlinearity f with its ignition temperature and solver metadata.

    jump_at_theta is the one-sided limit f(theta+); it is nonzero for
    reactions that switch on discontinuously at the ignition temperature,
    which solvers must know about to place quadrature weight correctly.
    """

    kind: str  # "ignition" | "kpp" | "cutoff"
    theta: float
    fprime0: float
    lipschitz: float
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    jump_at_theta: float = 0.0
    theta_prime: Optional[float] = None
    descriptor: dict = field(default_factory=dict)

    def __call__(self, u):
        return self.f(u)

    def label(self) -> str:
        return self.descriptor.get("label", self.kind)


def _validate(reaction: Reaction) -> Reaction:
    """Check the sign pattern f = 0 on [0, theta] U {1}, f > 0 on (theta, 1)."""
    th = reaction.theta
    if not 0.0 <= th < 1.0:
        raise ValueError(f"theta must lie in [0, 1), got {th}")
    if reaction.fprime0 < 0:
        raise ValueError("f'(0) must be nonnegative")
    if th > 0:
        u = np.linspace(0.0, th, _N_VALIDATE)
        vals = reaction.f(u)
        if np.any(vals != 0.0):
            raise ValueError("reaction must vanish on [0, theta]")
    if abs(float(reaction.f(np.array([1.0]))[0])) != 0.0:
        raise ValueError("reaction must vanish at u = 1")
    eps = (1.0 - th) / (_N_VALIDATE + 1)
    u = np.linspace(th + eps, 1.0 - eps, _N_VALIDATE)
    vals = reaction.f(u)
    if np.any(vals <= 0.0):
        raise ValueError("reaction must be positive on (theta, 1)")
    if reaction.kind == "kpp":
        u = np.linspace(0.0, 1.0, _N_VALIDATE)
        if np.any(reaction.f(u) > reaction.fprime0 * u + 1e-12):
            raise ValueError("KPP reaction must satisfy f(u) <= f'(0) u")
    return reaction


def ignition_reaction(theta: float, scale: float = 1.0) -> Reaction:
    """Ignition nonlinearity scale * u (1 - u) switched on above theta.

    The switch is discontinuous at theta (classical ignition-temperature
    kinetics); the jump size is recorded for quadrature-aware solvers.
    """
    if not 0.0 < theta < 1.0:
        raise ValueError("ignition temperature must lie in (0, 1)")

    def f(u):
        u = np.asarray(u, dtype=float)
        return np.where((u > theta) & (u < 1.0), scale * u * (1.0 - u), 0.0)

    def df(u):
        u = np.asarray(u, dtype=float)
        return np.where((u > theta) & (u < 1.0), scale * (1.0 - 2.0 * u), 0.0)

    return _validate(
        Reaction(
            kind="ignition",
            theta=theta,
            fprime0=0.0,
            lipschitz=scale * max(1.0, abs(1.0 - 2.0 * theta)),
            f=f,
            df=df,
            jump_at_theta=scale * theta * (1.0 - theta),
            descriptor={"type": "ignition", "theta": theta, "scale": scale,
                        "label": f"ignition(theta={theta:g},scale={scale:g})"},
        )
    )


def kpp_reaction(fprime0: float = 1.0) -> Reaction:
    """KPP nonlinearity fprime0 * u (1 - u): zero ignition temperature."""
    if fprime0 <= 0:
        raise ValueError("fprime0 must be positive")

    def f(u):
        u = np.asarray(u, dtype=float)
        return np.where((u > 0.0) & (u < 1.0), fprime0 * u * (1.0 - u), 0.0)

    def df(u):
        u = np.asarray(u, dtype=float)
        return np.where((u > 0.0) & (u < 1.0), fprime0 * (1.0 - 2.0 * u), 0.0)

    return _validate(
        Reaction(
            kind="kpp",
            theta=0.0,
            fprime0=fprime0,
            lipschitz=fprime0,
            f=f,
            df=df,
            descriptor={"type": "kpp", "fprime0": fprime0,
                        "label": f"kpp(fprime0={fprime0:g})"},
        )
    )


def make_cutoff(parent: Reaction, theta_prime: float) -> Reaction:
    """Multiply a zero-ignition-temperature reaction by a smooth switch.

    The result vanishes on [0, theta_prime], equals the parent on
    [2 theta_prime, 1], and lies below the parent pointwise; it is an
    ignition-type reaction with ignition temperature theta_prime and a
    continuous turn-on.
    """
    if not 0.0 < theta_prime <= 0.25:
        raise ValueError(f"theta_prime must lie in (0, 1/4], got {theta_prime}")
    if parent.theta != 0.0:
        raise ValueError("cutoff parent must have zero ignition temperature")

    pf, pdf = parent.f, parent.df

    def f(u):
        u = np.asarray(u, dtype=float)
        return pf(u) * smooth_step(u / theta_prime)

    def df(u):
        u = np.asarray(u, dtype=float)
        return (pdf(u) * smooth_step(u / theta_prime)
                + pf(u) * smooth_step_derivative(u / theta_prime) / theta_prime)

    u = np.linspace(0.0, 1.0, 4001)
    lip = float(np.max(np.abs(df(u)))) * 1.05

    return _validate(
        Reaction(
            kind="cutoff",
            theta=theta_prime,
            fprime0=0.0,
            lipschitz=lip,
            f=f,
            df=df,
            theta_prime=theta_prime,
            descriptor={"type": "cutoff", "theta_prime": theta_prime,
                        "parent": dict(parent.descriptor),
                        "label": f"cutoff({parent.label()},theta'={theta_prime:g})"},
        )
    )


def builtin_reaction(spec: dict) -> Reaction:
    """Build a reaction from a plain-dict descriptor (as used in configs)."""
    kind = spec.get("type")
    if kind == "ignition":
        return ignition_reaction(spec["theta"], spec.get("scale", 1.0))
    if kind == "kpp":
        return kpp_reaction(spec.get("fprime0", 1.0))
    if kind == "cutoff":
        return make_cutoff(builtin_reaction(spec["parent"]), spec["theta_prime"])
    raise ValueError(f"unknown reaction type {kind!r}")
