"""Cut locus, injectivity radius, spheres and their regularity."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .group import IDENTITY, GroupPoint
from .riemann import check_eps, exp_riemann
from .subriemann import exp_sr
from .synthesis import AXIS_RTOL, DEFAULT_TOL, distance


class Regularity(enum.Enum):
    SMOOTH = "Smooth"
    NON_SMOOTH = "NonSmooth"
    UNKNOWN = "Unknown"


def in_cut_locus(eps: float, q, slack: float = 0.0) -> bool:
    """Membership in Cut = {(0, 0, z) : |z| >= 2 pi eps^2}; for ``eps = 0`` the punctured axis.

    ``slack`` loosens both the axis test ``rho <= slack`` and the height bound.
    """
    eps = check_eps(eps, allow_zero=True)
    q = GroupPoint.of(q)
    if q.rho > slack:
        return False
    if eps == 0:
        return q.z != 0
    return abs(q.z) >= 2 * math.pi * eps**2 - slack


def injectivity_radius(eps: float) -> float:
    eps = check_eps(eps, allow_zero=True)
    if eps == 0:
        raise DomainError("the sub-Riemannian problem has injectivity radius 0")
    return 2 * math.pi * eps


def distance_smooth_at(eps: float, q) -> bool:
    q = GroupPoint.of(q)
    return not (q == IDENTITY or in_cut_locus(eps, q))


@dataclass(frozen=True)
class SphereSampleSet:
    """Samples of the sphere of radius ``radius`` on a ``(theta, phi)`` grid.

    ``points[i, j] = Exp(thetas[i], phis[j], radius)``. For ``eps = 0`` the
    first parameter is the vertical momentum ``c`` rather than ``theta``.
    """

    eps: float
    radius: float
    thetas: np.ndarray
    phis: np.ndarray
    points: np.ndarray

    @property
    def samples(self):
        for i, th in enumerate(self.thetas):
            for j, ph in enumerate(self.phis):
                yield float(th), float(ph), GroupPoint.of(self.points[i, j])

    def cloud(self) -> np.ndarray:
        return self.points.reshape(-1, 3)


def band_limit(eps: float, r: float) -> float:
    """Largest admissible ``|theta|`` (or ``|c|`` when ``eps = 0``) on the sphere of radius ``r``."""
    if eps == 0:
        return 2 * math.pi / r
    return math.asin(min(1.0, 2 * math.pi * eps / r))


def sample_sphere(eps: float, r: float, n_theta: int, n_phi: int, uniform_in: str = "theta") -> SphereSampleSet:
    """Grid over the admissible band, band edges included.

    ``uniform_in="c"`` spaces the samples evenly in ``c = sin(theta) / eps``
    instead of ``theta``, matching the sub-Riemannian parametrisation.
    """
    eps = check_eps(eps, allow_zero=True)
    if r <= 0 or n_theta < 2 or n_phi < 2:
        raise DomainError("need r > 0 and at least two samples per direction")
    lim = band_limit(eps, r)
    if uniform_in == "theta" or eps == 0:
        thetas = np.linspace(-lim, lim, n_theta)
    elif uniform_in == "c":
        s_lim = math.sin(lim)
        thetas = np.arcsin(np.clip(np.linspace(-s_lim, s_lim, n_theta), -1.0, 1.0))
    else:
        raise DomainError(f"unknown spacing {uniform_in!r}")
    phis = np.linspace(0.0, 2 * math.pi, n_phi, endpoint=False)
    th, ph = np.meshgrid(thetas, phis, indexing="ij")
    pts = exp_sr(th, ph, r) if eps == 0 else exp_riemann(eps, th, ph, r)
    return SphereSampleSet(eps, float(r), thetas, phis, pts)


def cross_section(s: SphereSampleSet) -> np.ndarray:
    """Meridian polyline ``(rho, z)`` ordered by theta; spheres are surfaces of revolution about z."""
    pts = exp_sr(s.thetas, 0.0, s.radius) if s.eps == 0 else exp_riemann(s.eps, s.thetas, 0.0, s.radius)
    return np.stack([np.hypot(pts[:, 0], pts[:, 1]), pts[:, 2]], axis=-1)


def sphere_smoothness(eps: float, r: float, q, tol: float = 1e-8) -> Regularity:
    """Regularity of the sphere ``S(r)`` at ``q``.

    Off the z axis the sphere is smooth. On the axis the answer depends on
    how ``r`` compares with the injectivity radius ``2 pi eps``: below it a
    unique non-conjugate minimizer arrives (smooth), above it a circle of
    minimizers does (not smooth), and at equality the question is open.
    """
    eps = check_eps(eps)
    q = GroupPoint.of(q)
    scale = max(1.0, r)
    if abs(distance(eps, q, DEFAULT_TOL) - r) > tol * scale:
        raise DomainError(f"{q} is not on the sphere of radius {r}")
    if q.rho / eps >= AXIS_RTOL * max(1.0, abs(q.z) / eps**2):
        return Regularity.SMOOTH
    r_inj = injectivity_radius(eps)
    if abs(r - r_inj) <= tol * scale:
        return Regularity.UNKNOWN
    return Regularity.SMOOTH if r < r_inj else Regularity.NON_SMOOTH


def remark_minor_check(eps: float, h: float) -> tuple[float, float, float]:
    """2x2 minors ``d(x,y)``, ``d(x,z)``, ``d(y,z)`` over ``d(h1, h2)`` at the axis point of ``S(2 pi eps)``.

    The sphere is parametrised near the axis by the initial horizontal
    momentum ``(h1, h2)`` (``theta > 0`` branch) and differentiated by central
    differences with step ``h`` at ``h1 = h2 = 0``.
    """
    eps = check_eps(eps)
    if h <= 0:
        raise DomainError("finite-difference step must be positive")
    r = 2 * math.pi * eps

    def sphere(a, b):
        return exp_riemann(eps, math.acos(math.hypot(a, b)), math.atan2(b, a), r)

    da = (sphere(h, 0.0) - sphere(-h, 0.0)) / (2 * h)
    db = (sphere(0.0, h) - sphere(0.0, -h)) / (2 * h)
    jac = np.stack([da, db], axis=1)

    def minor(i, j):
        return float(jac[i, 0] * jac[j, 1] - jac[i, 1] * jac[j, 0])

    return minor(0, 1), minor(0, 2), minor(1, 2)
