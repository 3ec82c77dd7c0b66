"""Diagnostics for the eps -> 0 limit of P_eps towards P_0.

Covectors are matched by ``c = sin(theta) / eps``, ``psi = phi``. Set
distances are Euclidean in the global coordinates ``(x, y, z)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DomainError
from .loci import in_cut_locus, sample_sphere
from .riemann import HALF_PI, check_eps, exp_riemann
from .subriemann import exp_sr

DEFAULT_EPS = (1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001)

DECREASING = "decreasing-to-zero"
INCONCLUSIVE = "inconclusive"


class ExpResidual(NamedTuple):
    max_norm: np.ndarray
    """``|Exp_eps(theta, phi, t) - Exp_0(sin(theta)/eps, phi, t)|_inf``."""
    dz_formula: np.ndarray
    """``(eps/2) (t sin(theta) + eps sin(t sin(theta)/eps))``."""
    dz_direct: np.ndarray
    """``z_eps - z_0`` by subtraction."""


@dataclass(frozen=True)
class ConvergenceReport:
    eps_sequence: list[float]
    residuals: list[float]
    threshold: float
    verdict: str


def exp_residual(theta, phi, t, eps) -> ExpResidual:
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) >= HALF_PI):
        raise DomainError("theta must lie in the open interval (-pi/2, pi/2)")
    check_eps(eps)
    sth = np.sin(theta)
    p_eps = exp_riemann(eps, theta, phi, t)
    p_0 = exp_sr(sth / eps, phi, t)
    diff = p_eps - p_0
    t = np.asarray(t, dtype=float)
    dz = 0.5 * eps * (t * sth + eps * np.sin(t * sth / eps))
    return ExpResidual(np.max(np.abs(diff), axis=-1), dz, diff[..., 2])


def judge(residuals: Sequence[float], threshold: float) -> str:
    """Decreasing-to-zero when each step strictly decreases (or has already hit 0) and the last is below ``threshold``."""
    r = list(residuals)
    if any(v < 0 or not math.isfinite(v) for v in r):
        return INCONCLUSIVE
    steps_ok = all(b < a or a == b == 0 for a, b in zip(r, r[1:]))
    return DECREASING if steps_ok and r and r[-1] <= threshold else INCONCLUSIVE


def exp_convergence(theta: float, phi: float, t: float, eps_sequence=DEFAULT_EPS, threshold: float = 1e-3) -> ConvergenceReport:
    eps_sequence = sorted(eps_sequence, reverse=True)
    res = [float(exp_residual(theta, phi, t, e).max_norm) for e in eps_sequence]
    return ConvergenceReport(list(eps_sequence), res, threshold, judge(res, threshold))


def cut_chi(eps: float, q) -> int:
    return int(in_cut_locus(eps, q))


def cut_nesting_check(eps1: float, eps2: float, probes) -> bool:
    """True when ``Cut_eps2`` is contained in ``Cut_eps1`` on every probe."""
    if not 0 <= eps1 < eps2:
        raise DomainError("need 0 <= eps1 < eps2")
    return all(cut_chi(eps2, q) <= cut_chi(eps1, q) for q in probes)


def _sr_sphere_probes(r: float, n: int, k: int = 1) -> np.ndarray:
    lim = 2 * math.pi / r
    c, psi = np.meshgrid(np.linspace(-lim, lim, (n - 1) * k + 1),
                         np.linspace(0.0, 2 * math.pi, n * k, endpoint=False), indexing="ij")
    return exp_sr(c, psi, r)


def sampling_resolution(r: float, n_probe: int) -> float:
    """Largest Euclidean gap between grid neighbours of the ``S_0(r)`` probe set."""
    grid = _sr_sphere_probes(r, n_probe)
    along_c = np.linalg.norm(np.diff(grid, axis=0), axis=-1).max()
    along_psi = np.linalg.norm(grid - np.roll(grid, 1, axis=1), axis=-1).max()
    return float(max(along_c, along_psi))


def _check_counts(r, eps, n_probe, n_sample):
    if r <= 0:
        raise DomainError("radius must be positive")
    check_eps(eps)
    if n_probe < 8 or n_sample < 8:
        raise DomainError("need at least 8 probes and samples per direction")


def _eps_sphere_cloud(r, eps, n_probe, n_sample) -> np.ndarray:
    # evenly spaced in c and refined by an integer factor, so that as eps -> 0
    # every probe of S_0(r) has a partner sharing its (c, psi)
    k = max(1, round(n_sample / n_probe))
    return sample_sphere(eps, r, (n_probe - 1) * k + 1, n_probe * k, uniform_in="c").cloud()


def sphere_liminf_gap(r: float, eps: float, n_probe: int = 48, n_sample: int = 96) -> float:
    """``max_{q in S_0(r)} dist(q, S_eps(r))`` over sampled sets.

    ``S_0(r)`` is probed on an ``n_probe x n_probe`` grid in ``(c, psi)``;
    ``S_eps(r)`` is sampled on that grid refined ``round(n_sample / n_probe)``
    times. Lower semicontinuity of the spheres means the gap tends to 0.
    """
    _check_counts(r, eps, n_probe, n_sample)
    probes = _sr_sphere_probes(r, n_probe).reshape(-1, 3)
    cloud = _eps_sphere_cloud(r, eps, n_probe, n_sample)
    d, _ = cKDTree(cloud).query(probes)
    return float(d.max())


def sphere_limsup_gap(r: float, eps: float, n_probe: int = 48, n_sample: int = 96) -> float:
    """``max_{p in S_eps(r)} dist(p, S_0(r))`` over sampled sets; reported, never asserted."""
    _check_counts(r, eps, n_probe, n_sample)
    probes = _eps_sphere_cloud(r, eps, n_probe, n_probe)
    cloud = _sr_sphere_probes(r, n_probe, max(1, round(n_sample / n_probe))).reshape(-1, 3)
    d, _ = cKDTree(cloud).query(probes)
    return float(d.max())


def sphere_convergence(r: float, eps_sequence=DEFAULT_EPS, n_probe: int = 48, n_sample: int = 96,
                       upper: bool = False) -> ConvergenceReport:
    eps_sequence = sorted(eps_sequence, reverse=True)
    gap = sphere_limsup_gap if upper else sphere_liminf_gap
    res = [gap(r, e, n_probe, n_sample) for e in eps_sequence]
    threshold = 10 * sampling_resolution(r, n_probe)
    return ConvergenceReport(list(eps_sequence), res, threshold, judge(res, threshold))
