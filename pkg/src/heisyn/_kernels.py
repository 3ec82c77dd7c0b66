"""Removable-singularity kernels shared by both exponential maps.

With ``tau = h3 * t`` the planar extremal formulas become

    sin(tau) / h3        = t * sinc1(tau)
    (cos(tau) - 1) / h3  = t * cosc1(tau)
    (tau - sin(tau))/h3^2 = t^2 * tmsin2(tau)

which stay finite and smooth through ``h3 = 0``.
"""

import numpy as np

# |tau| below this uses the series for (tau - sin tau) / tau^2; the direct
# difference loses ~log10(1/tau^3) digits.
SERIES_CUTOFF = 0.5

# coefficients of tau^(2k+1) in (tau - sin tau)/tau^2: (-1)^k / (2k+3)!
_TMSIN_COEFFS = np.array([(-1) ** k / float(np.prod(np.arange(1, 2 * k + 4))) for k in range(9)])


def sinc1(tau):
    """sin(tau)/tau."""
    return np.sinc(np.asarray(tau, dtype=float) / np.pi)


def cosc1(tau):
    """(cos(tau) - 1)/tau, written as -(tau/2) sinc(tau/2)^2 to avoid cancellation."""
    tau = np.asarray(tau, dtype=float)
    return -0.5 * tau * np.sinc(tau / (2 * np.pi)) ** 2


def tmsin2(tau):
    """(tau - sin(tau))/tau^2."""
    tau = np.asarray(tau, dtype=float)
    small = np.abs(tau) < SERIES_CUTOFF
    t2 = tau * tau
    series = np.zeros_like(tau)
    for c in _TMSIN_COEFFS[::-1]:
        series = series * t2 + c
    series = series * tau
    safe = np.where(small, 1.0, tau)
    direct = (safe - np.sin(safe)) / (safe * safe)
    return np.where(small, series, direct)
