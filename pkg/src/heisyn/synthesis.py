"""Distance from the identity and minimizing geodesics for P_eps.

Left-invariance plus the rotation and vertical-reflection symmetries reduce
every query to the meridian half-plane with ``z >= 0``. There the generic
case is an inversion of Exp on

    N = {0 < theta < pi/2, 0 < tau < 2 pi},    D = {x^2 + y^2 > 0, z > 0},

and the remaining cases (identity, plane z = 0, z axis) are closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from ._kernels import tmsin2
from .errors import DomainError, NoConvergence, Unreached
from .group import GroupPoint, left_translate
from .riemann import HALF_PI, Geodesic, Momentum, check_eps, exp_riemann
from .subriemann import SRMomentum, exp_sr, sr_axis_distance

DEFAULT_TOL = 1e-12
MAX_ITER = 100
# rho/eps below this times max(1, |z|/eps^2) is treated as lying on the axis
AXIS_RTOL = 1e-12

BRANCHES = ("identity", "plane", "axis-short", "axis-long", "generic")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a distance solve.

    ``residual`` is the max-norm gap between ``Exp(momentum, time)`` and the
    query point. On the ``generic`` branch it is at most
    ``tol * max(1, |q|_inf)``. Near-axis points routed to a closed form report
    their true residual, which is of the order of their distance to the axis.
    For ``eps = 0`` the momentum is an :class:`SRMomentum`.
    """

    momentum: Momentum | SRMomentum
    time: float
    residual: float
    iterations: int
    branch: str
    eps: float = 1.0

    @property
    def geodesic(self) -> Geodesic:
        return Geodesic(self.eps, self.momentum, self.time)


@dataclass(frozen=True)
class MinimizerSet:
    """Minimizing geodesics reaching a point.

    ``multiple`` marks axis points beyond the cut locus boundary, reached by
    the whole circle of covectors ``(theta, phi)``, ``phi`` free. Only the
    ``phi = 0`` representative is stored; :meth:`family` expands it.
    ``degenerate`` marks the boundary point where the minimizer is conjugate.
    """

    geodesics: list[Geodesic]
    branch: str
    multiple: bool = False
    degenerate: bool = False
    distance: float = field(default=0.0)

    def family(self, n: int) -> list[Geodesic]:
        if not self.multiple:
            return list(self.geodesics)
        g = self.geodesics[0]
        return [Geodesic(g.eps, Momentum(g.momentum.theta, 2 * math.pi * k / n), g.duration) for k in range(n)]


def _wrap(angle: float) -> float:
    return math.remainder(angle, 2 * math.pi)


def _meridian_tau_equation(u: float):
    """Height ``z/eps^2`` on the meridian as a function of ``tau`` at fixed ``rho/eps = u``.

    Eliminating ``cot^2(theta) = u^2 / (4 sin^2(tau/2))`` leaves

        g(tau) = u^2 (tau - sin tau) / (8 sin^2(tau/2)) + tau,

    strictly increasing on (0, 2 pi) from 0 to infinity.
    """
    u2 = u * u

    def g(tau):
        return u2 * float(tmsin2(tau)) / (2.0 * float(np.sinc(tau / (2 * math.pi))) ** 2) + tau

    return g


def _meridian(theta: float, tau: float) -> tuple[float, float]:
    cot = math.cos(theta) / math.sin(theta)
    return 2 * cot * math.sin(tau / 2), 0.5 * cot * cot * tau * tau * float(tmsin2(tau)) + tau


def _meridian_jac(theta: float, tau: float) -> np.ndarray:
    s = math.sin(theta)
    cot = math.cos(theta) / s
    csc2 = 1 / (s * s)
    return np.array(
        [
            [-2 * csc2 * math.sin(tau / 2), cot * math.cos(tau / 2)],
            [-cot * csc2 * (tau - math.sin(tau)), cot * cot * (1 - math.cos(tau)) / 2 + 1],
        ]
    )


def _polish(theta: float, tau: float, u: float, w: float, iters: int = 5) -> tuple[float, float, int]:
    """Damped Newton on the meridian equations; keeps a step only if it lowers the residual."""
    target = np.array([u, w])
    scale = np.array([max(1.0, u), max(1.0, w)])

    def res(th, ta):
        return np.max(np.abs((np.array(_meridian(th, ta)) - target) / scale))

    r = res(theta, tau)
    n = 0
    for n in range(1, iters + 1):
        if r == 0:
            break
        try:
            step = np.linalg.solve(_meridian_jac(theta, tau), target - np.array(_meridian(theta, tau)))
        except (ZeroDivisionError, OverflowError, np.linalg.LinAlgError):
            break  # theta ~ tau underflow near the plane; brentq's answer stands
        if not np.all(np.isfinite(step)):
            break
        lam = 1.0
        while lam > 1e-6:
            th, ta = theta + lam * step[0], tau + lam * step[1]
            if 0 < th < HALF_PI and 0 < ta < 2 * math.pi:
                r_new = res(th, ta)
                if r_new < r:
                    break
            lam /= 2
        else:
            break
        theta, tau, r = th, ta, r_new
    return theta, tau, n


def invert_exp(eps: float, q, tol: float = DEFAULT_TOL) -> SolveReport:
    """Unique covector and time in N reaching ``q``, after reducing ``z`` to be positive."""
    eps = check_eps(eps)
    if tol <= 0:
        raise DomainError("tol must be positive")
    q = GroupPoint.of(q)
    rho = q.rho
    if rho == 0 or q.z == 0:
        raise DomainError(f"{q} is outside {{x^2 + y^2 > 0, z != 0}}")
    flipped = q.z < 0
    x, y, z = (q.x, -q.y, -q.z) if flipped else q
    u, w = rho / eps, z / eps**2

    g = _meridian_tau_equation(u)
    delta = 0.5
    hi = 2 * math.pi - delta
    while g(hi) <= w:
        delta /= 4
        hi = 2 * math.pi - delta
        if hi == 2 * math.pi:
            raise NoConvergence(f"could not bracket the meridian root for {q}")
    tau, info = brentq(lambda s: g(s) - w, 0.0, hi, xtol=1e-300, rtol=4 * np.finfo(float).eps,
                       maxiter=MAX_ITER, full_output=True, disp=False)
    if not info.converged:
        raise NoConvergence(f"meridian root-find stalled for {q}: {info.flag}")
    if tau < 1e-100:
        # g is linear here to working precision: g(tau) = (1 + u^2 / 12) tau
        tau = w / (1 + u * u / 12)
    theta = math.atan2(2 * math.sin(tau / 2), u)
    n_newton = 0
    if tau >= 1e-100:
        theta, tau, n_newton = _polish(theta, tau, u, w)

    # tan(theta) = 2 sin(tau/2) / u and sin(tau/2) = tau/2 to working precision
    t = eps * tau / math.sin(theta) if tau >= 1e-100 else eps * math.hypot(u, tau)
    x0, y0, _ = exp_riemann(eps, theta, 0.0, t)
    phi = _wrap(math.atan2(y, x) - math.atan2(y0, x0))
    if flipped:
        theta, phi = -theta, _wrap(-phi)
    residual = float(np.max(np.abs(exp_riemann(eps, theta, phi, t) - np.asarray(q))))
    if residual > tol * max(1.0, max(abs(c) for c in q)):
        raise NoConvergence(f"residual {residual:.3e} above tolerance at {q}")
    return SolveReport(Momentum(float(theta), float(phi)), float(t), residual, info.iterations + n_newton, "generic", eps)


def _on_axis(eps: float, rho: float, z: float) -> bool:
    if eps == 0:
        return rho == 0
    return rho / eps < AXIS_RTOL * max(1.0, abs(z) / eps**2)


def _residual(eps, mom, t, q) -> float:
    if eps == 0:
        p = exp_sr(mom.c, mom.psi, t)
    else:
        p = exp_riemann(eps, mom.theta, mom.phi, t)
    return float(np.max(np.abs(p - np.asarray(q))))


def _solve_sr(q: GroupPoint) -> SolveReport:
    rho, z = q.rho, q.z
    if rho == 0 and z == 0:
        return SolveReport(SRMomentum(0.0, 0.0), 0.0, 0.0, 0, "identity", 0.0)
    if z == 0:
        m = SRMomentum(0.0, math.atan2(q.y, q.x))
        return SolveReport(m, rho, _residual(0.0, m, rho, q), 0, "plane", 0.0)
    if rho == 0:
        c = math.copysign(math.sqrt(math.pi / abs(z)), z)
        m, t = SRMomentum(c, 0.0), sr_axis_distance(z)
        return SolveReport(m, t, _residual(0.0, m, t, q), 0, "axis-long", 0.0)
    raise DomainError("off-axis sub-Riemannian distance is not supported; use the eps -> 0 diagnostics")


def solve(eps: float, q, tol: float = DEFAULT_TOL) -> SolveReport:
    """Distance solve with the full case analysis; see :func:`distance`."""
    eps = check_eps(eps, allow_zero=True)
    q = GroupPoint.of(q)
    if eps == 0:
        return _solve_sr(q)
    rho, z = q.rho, q.z
    if rho == 0 and z == 0:
        return SolveReport(Momentum(0.0, 0.0), 0.0, 0.0, 0, "identity", eps)
    if z == 0:
        m = Momentum(0.0, math.atan2(q.y, q.x))
        return SolveReport(m, rho, _residual(eps, m, rho, q), 0, "plane", eps)
    if _on_axis(eps, rho, z):
        az = abs(z)
        sign = math.copysign(1.0, z)
        if az <= 2 * math.pi * eps**2:
            m, t, branch = Momentum(sign * HALF_PI, 0.0), az / eps, "axis-short"
        else:
            k = az / (math.pi * eps**2) - 1
            m = Momentum(sign * math.asin(1 / math.sqrt(k)), 0.0)
            t, branch = 2 * math.pi * eps * math.sqrt(k), "axis-long"
        return SolveReport(m, t, _residual(eps, m, t, q), 0, branch, eps)
    return invert_exp(eps, q, tol)


def distance(eps: float, q, tol: float = DEFAULT_TOL) -> float:
    """Distance from the identity to ``q``.

    identity -> 0; plane ``z = 0`` -> ``rho``; axis with ``|z| <= 2 pi eps^2``
    -> ``|z| / eps``; axis beyond -> ``2 pi eps sqrt(|z| / (pi eps^2) - 1)``;
    otherwise the time returned by :func:`invert_exp`. ``eps = 0`` supports
    only the identity, plane and axis cases.
    """
    return solve(eps, q, tol).time


def distance_between(eps: float, a, b, tol: float = DEFAULT_TOL) -> float:
    return distance(eps, left_translate(a, b), tol)


def minimizers(eps: float, q, tol: float = DEFAULT_TOL) -> MinimizerSet:
    eps = check_eps(eps)
    rep = solve(eps, q, tol)
    if rep.branch == "identity":
        return MinimizerSet([], "identity", distance=0.0)
    geo = Geodesic(eps, rep.momentum, rep.time)
    if rep.branch == "axis-long":
        return MinimizerSet([geo], rep.branch, multiple=True, distance=rep.time)
    degenerate = rep.branch == "axis-short" and abs(GroupPoint.of(q).z) == 2 * math.pi * eps**2
    return MinimizerSet([geo], rep.branch, degenerate=degenerate, distance=rep.time)


def brute_force_distance(
    eps: float,
    q,
    n_theta: int = 401,
    t_step: float = 0.01,
    t_max: float | None = None,
    refine: int = 10,
) -> float:
    """Grid-search estimate of the distance, independent of :func:`invert_exp`.

    Exp is tabulated at ``phi = 0`` on a ``(theta, t)`` grid and, by rotation
    symmetry, compared in the meridian coordinates ``(rho, z)``; ``rho`` is
    signed so that curves crossing the axis are seen. Each grid cell is split
    into two triangles; the estimate is the smallest linearly interpolated
    time over triangles whose image contains the target, recomputed once on a
    ``refine``-times finer grid around the best cells.
    """
    eps = check_eps(eps)
    if n_theta < 3 or t_step <= 0 or refine < 1:
        raise DomainError("grid resolution must be positive")
    q = GroupPoint.of(q)
    target = np.array([q.rho, q.z])
    if t_max is None:
        # along the plane to (x, y, 0), then vertically
        t_max = q.rho + abs(q.z) / eps + 2 * t_step

    thetas = np.linspace(-HALF_PI, HALF_PI, n_theta | 1)
    times = np.arange(0.0, t_max + t_step, t_step)
    cells = _containing_cells(eps, thetas, times, target)
    if not cells:
        raise Unreached(f"no grid cell contains {q}")
    best = cells[0][0]
    dth = thetas[1] - thetas[0]
    estimates = [best]
    for t_hit, i, j in cells[:8]:
        if t_hit > best + 2 * t_step:
            break
        th_loc = np.linspace(max(-HALF_PI, thetas[i] - dth), min(HALF_PI, thetas[i] + 2 * dth), 3 * refine + 1)
        t_loc = np.linspace(max(0.0, times[j] - t_step), times[j] + 2 * t_step, 3 * refine + 1)
        fine = _containing_cells(eps, th_loc, t_loc, target)
        if fine:
            estimates.append(fine[0][0])
    return max(0.0, min(estimates))


def _containing_cells(eps, thetas, times, target, bary_tol: float = 1e-9):
    """``(t, i, j)`` for grid triangles whose meridian image contains ``target``, smallest ``t`` first."""
    th, tt = np.meshgrid(thetas, times, indexing="ij")
    pts = exp_riemann(eps, th, 0.0, tt)
    side = np.where(np.sin(th) * np.sin(np.sin(th) * tt / (2 * eps)) < 0, -1.0, 1.0)
    mer = np.stack([side * np.hypot(pts[..., 0], pts[..., 1]), pts[..., 2]], axis=-1)

    a, b, c, d = mer[:-1, :-1], mer[1:, :-1], mer[:-1, 1:], mer[1:, 1:]
    ta, tb, tc, td = tt[:-1, :-1], tt[1:, :-1], tt[:-1, 1:], tt[1:, 1:]
    found = []
    for p0, p1, p2, t0, t1, t2 in ((a, b, c, ta, tb, tc), (d, c, b, td, tc, tb)):
        v0, v1, v2 = p1 - p0, p2 - p0, target - p0
        den = v0[..., 0] * v1[..., 1] - v0[..., 1] * v1[..., 0]
        scale = np.hypot(*np.moveaxis(v0, -1, 0)) * np.hypot(*np.moveaxis(v1, -1, 0))
        ok = np.abs(den) > 1e-12 * scale
        den = np.where(ok, den, 1.0)
        l1 = (v2[..., 0] * v1[..., 1] - v2[..., 1] * v1[..., 0]) / den
        l2 = (v0[..., 0] * v2[..., 1] - v0[..., 1] * v2[..., 0]) / den
        l0 = 1 - l1 - l2
        inside = ok & (l0 >= -bary_tol) & (l1 >= -bary_tol) & (l2 >= -bary_tol)
        t_int = l0 * t0 + l1 * t1 + l2 * t2
        for i, j in zip(*np.nonzero(inside)):
            found.append((float(t_int[i, j]), int(i), int(j)))
    found.sort()
    return found
