"""Exponential map, conjugate and cut times of the Riemannian problems P_eps.

The metric declares ``{X1, X2, eps X3}`` orthonormal. Arclength geodesics from
the identity are labelled by a unit covector ``(theta, phi)``:

    h1 = cos(theta) cos(phi),  h2 = cos(theta) sin(phi),  eps h3 = sin(theta)

and the time ``t``; ``tau = h3 t`` is the rotation angle of ``(h1, h2)``.
All array functions broadcast over their arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import cosc1, sinc1, tmsin2
from .errors import DomainError
from .group import GroupPoint

HALF_PI = math.pi / 2


def check_eps(eps: float, allow_zero: bool = False) -> float:
    eps = float(eps)
    if not math.isfinite(eps) or eps < 0 or (eps == 0 and not allow_zero):
        raise DomainError(f"eps must be {'>= 0' if allow_zero else '> 0'}, got {eps}")
    return eps


@dataclass(frozen=True)
class Momentum:
    """Initial covector on the level set H = 1/2."""

    theta: float
    phi: float

    def __post_init__(self):
        if not -HALF_PI <= self.theta <= HALF_PI:
            raise DomainError(f"theta must lie in [-pi/2, pi/2], got {self.theta}")

    def h(self, eps: float) -> tuple[float, float, float]:
        c = math.cos(self.theta)
        return c * math.cos(self.phi), c * math.sin(self.phi), math.sin(self.theta) / eps


@dataclass(frozen=True)
class Geodesic:
    eps: float
    momentum: Momentum
    duration: float

    @property
    def endpoint(self) -> GroupPoint:
        return GroupPoint.of(exp_riemann(self.eps, self.momentum.theta, self.momentum.phi, self.duration))

    @property
    def cut_time(self) -> float:
        return cut_time(self.eps, self.momentum.theta)

    def sample(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        t = np.linspace(0.0, self.duration, n + 1)
        return t, exp_riemann(self.eps, self.momentum.theta, self.momentum.phi, t)

    def controls(self, t) -> np.ndarray:
        return controls(self.eps, self.momentum.theta, self.momentum.phi, t)


def exp_riemann(eps, theta, phi, t) -> np.ndarray:
    """Endpoint of the arclength geodesic ``(theta, phi)`` at time ``t``; shape ``(..., 3)``."""
    theta, phi, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (theta, phi, t)))
    eps = np.asarray(eps, dtype=float)
    cth, sth = np.cos(theta), np.sin(theta)
    tau = sth * t / eps
    s, c = sinc1(tau), cosc1(tau)
    h1, h2 = cth * np.cos(phi), cth * np.sin(phi)
    x = t * (h1 * s + h2 * c)
    y = t * (h2 * s - h1 * c)
    z = 0.5 * cth**2 * t**2 * tmsin2(tau) + eps * sth * t
    return np.stack([x, y, z], axis=-1)


def extremal_momentum(eps, theta, phi, t) -> np.ndarray:
    """``(h1, h2, h3)`` along the extremal at time ``t``."""
    theta, phi, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (theta, phi, t)))
    h3 = np.sin(theta) / eps
    ang = phi + h3 * t
    cth = np.cos(theta)
    return np.stack([cth * np.cos(ang), cth * np.sin(ang), h3], axis=-1)


def controls(eps, theta, phi, t) -> np.ndarray:
    """Unit control ``(u1, u2, u3) = (h1(t), h2(t), eps h3)`` realising the geodesic."""
    h = extremal_momentum(eps, theta, phi, t)
    h[..., 2] *= eps
    return h


def _rhs(state, eps2):
    x, y, z, h1, h2, h3 = state
    return np.stack([h1, h2, 0.5 * (x * h2 - y * h1) + eps2 * h3, -h2 * h3, h1 * h3, np.zeros_like(h3)])


def integrate_extremal(eps, theta, phi, t, step: float = 1e-4, n_out: int = 1):
    """Classical RK4 integration of the full Hamiltonian system.

    Every trajectory uses ``N = ceil(max(t) / step)`` equal steps of its own
    length ``t_i / N <= step``, so the batch advances in lockstep.

    Returns ``(times, points, momenta)`` with shapes ``(n_out + 1, B)``,
    ``(n_out + 1, B, 3)`` and ``(n_out + 1, B, 3)``.
    """
    if step <= 0:
        raise DomainError("step must be positive")
    eps, theta, phi, t = np.broadcast_arrays(*(np.atleast_1d(np.asarray(a, dtype=float)) for a in (eps, theta, phi, t)))
    n_steps = max(int(math.ceil(float(np.max(t)) / step)), 1)
    n_steps = int(math.ceil(n_steps / n_out)) * n_out
    every = n_steps // n_out
    h = t / n_steps
    eps2 = eps**2
    cth = np.cos(theta)
    state = np.stack([np.zeros_like(t)] * 3 + [cth * np.cos(phi), cth * np.sin(phi), np.sin(theta) / eps])
    out = [state.copy()]
    for i in range(1, n_steps + 1):
        k1 = _rhs(state, eps2)
        k2 = _rhs(state + 0.5 * h * k1, eps2)
        k3 = _rhs(state + 0.5 * h * k2, eps2)
        k4 = _rhs(state + h * k3, eps2)
        state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if i % every == 0:
            out.append(state.copy())
    traj = np.stack(out)  # (n_out+1, 6, B)
    times = np.arange(n_out + 1)[:, None] * every * h[None, :]
    return times, np.moveaxis(traj[:, :3], 1, 2), np.moveaxis(traj[:, 3:], 1, 2)


def exp_ode_oracle(eps, theta, phi, t, step: float = 1e-4) -> np.ndarray:
    """Endpoint by numerical integration; independent check on :func:`exp_riemann`."""
    shape = np.broadcast(np.asarray(eps), np.asarray(theta), np.asarray(phi), np.asarray(t)).shape
    _, pts, _ = integrate_extremal(eps, theta, phi, t, step)
    return pts[-1].reshape(shape + (3,))


def hamiltonian(eps, momenta) -> np.ndarray:
    """``h1^2 + h2^2 + eps^2 h3^2``; identically 1 along arclength extremals."""
    m = np.asarray(momenta)
    return m[..., 0] ** 2 + m[..., 1] ** 2 + (eps * m[..., 2]) ** 2


def conjugacy_function(theta, tau):
    """``2 (cos tau - 1) + tau sin tau cos^2 theta``; negative on ``0 < |tau| < 2 pi``."""
    return 2 * (np.cos(tau) - 1) + tau * np.sin(tau) * np.cos(theta) ** 2


def jacobian_det(eps: float, theta: float, t: float) -> float:
    """Determinant of ``d(x, y, z) / d(theta, phi, t)``.

    Equals ``eps^3 cos(theta) / sin^4(theta) * conjugacy_function(theta, tau)``.
    It does not depend on ``phi``.
    """
    eps = check_eps(eps)
    if theta == 0 or abs(theta) >= HALF_PI:
        raise DomainError("jacobian_det needs theta in (-pi/2, 0) U (0, pi/2)")
    s = math.sin(theta)
    tau = s * t / eps
    return eps**3 * math.cos(theta) / s**4 * float(conjugacy_function(theta, tau))


def exp_jacobian(eps: float, theta: float, phi: float, t: float, h: float = 1e-6) -> np.ndarray:
    """Central-difference 3x3 Jacobian of ``(theta, phi, t) -> Exp``; columns follow that order."""
    p = np.array([theta, phi, t], dtype=float)
    cols = []
    for i in range(3):
        d = np.zeros(3)
        d[i] = h
        cols.append((exp_riemann(eps, *(p + d)) - exp_riemann(eps, *(p - d))) / (2 * h))
    return np.stack(cols, axis=1)


def conjugate_time(eps: float, theta: float) -> float:
    """First conjugate time ``2 pi eps / |sin theta|``; ``inf`` for straight lines."""
    eps = check_eps(eps)
    s = abs(math.sin(theta))
    return math.inf if s == 0 else 2 * math.pi * eps / s


def conjugate_point(eps: float, theta: float) -> GroupPoint:
    eps = check_eps(eps)
    if theta == 0:
        raise DomainError("straight lines have no conjugate point")
    s2 = math.sin(theta) ** 2
    return GroupPoint(0.0, 0.0, math.copysign(math.pi * eps**2 * (1 + s2) / s2, theta))


def cut_time(eps: float, theta: float) -> float:
    """Cut time; coincides with the first conjugate time for every covector."""
    return conjugate_time(eps, theta)
