"""Normal extremals of the sub-Riemannian problem P_0.

Covector ``h1 = cos(psi), h2 = sin(psi), h3 = c``; ``c = 0`` gives straight lines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import cosc1, sinc1, tmsin2


@dataclass(frozen=True)
class SRMomentum:
    c: float
    psi: float


def exp_sr(c, psi, t) -> np.ndarray:
    c, psi, t = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (c, psi, t)))
    tau = c * t
    s, k = sinc1(tau), cosc1(tau)
    cp, sp = np.cos(psi), np.sin(psi)
    x = t * (cp * s + sp * k)
    y = t * (sp * s - cp * k)
    z = 0.5 * t**2 * tmsin2(tau)
    return np.stack([x, y, z], axis=-1)


def cut_time_sr(c: float) -> float:
    return math.inf if c == 0 else 2 * math.pi / abs(c)


def sr_axis_distance(z: float) -> float:
    """Length of the shortest horizontal curve from the identity to ``(0, 0, z)``.

    The circle arcs with ``|c| = sqrt(pi / |z|)`` close up on the axis at
    ``t = 2 pi / |c|``, giving ``2 sqrt(pi |z|)``.
    """
    return 2 * math.sqrt(math.pi * abs(z))
