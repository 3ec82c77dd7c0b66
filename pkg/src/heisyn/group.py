"""Heisenberg group law and the symmetries used to reduce distance queries.

Points are ``(x, y, z)`` with product
``(x1, y1, z1) . (x2, y2, z2) = (x1 + x2, y1 + y2, z1 + z2 + (x1 y2 - x2 y1) / 2)``.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np


class GroupPoint(NamedTuple):
    x: float
    y: float
    z: float

    @classmethod
    def of(cls, q) -> "GroupPoint":
        x, y, z = (float(c) for c in q)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise ValueError(f"non-finite group point {q!r}")
        return cls(x, y, z)

    @property
    def rho(self) -> float:
        """Distance from the z axis."""
        return math.hypot(self.x, self.y)


IDENTITY = GroupPoint(0.0, 0.0, 0.0)


def group_multiply(a, b) -> GroupPoint:
    x1, y1, z1 = a
    x2, y2, z2 = b
    return GroupPoint(x1 + x2, y1 + y2, z1 + z2 + (x1 * y2 - x2 * y1) / 2)


def group_inverse(a) -> GroupPoint:
    x, y, z = a
    return GroupPoint(-x, -y, -z)


def left_translate(base, q) -> GroupPoint:
    """Move ``q`` by ``base^-1`` so that ``base`` lands on the identity.

    Distances are left-invariant, so ``d(base, q) = d(Id, left_translate(base, q))``.
    """
    return group_multiply(group_inverse(base), q)


def rotate_about_z(q, alpha: float) -> GroupPoint:
    x, y, z = q
    c, s = math.cos(alpha), math.sin(alpha)
    return GroupPoint(c * x - s * y, s * x + c * y, z)


def reflect_vertical(q) -> GroupPoint:
    """``(x, y, z) -> (x, -y, -z)``, the image of the covector flip ``(theta, phi) -> (-theta, -phi)``."""
    x, y, z = q
    return GroupPoint(x, -y, -z)


def to_chamber(q) -> tuple[GroupPoint, bool, float]:
    """Reduce ``q`` to the meridian half-plane ``{y = 0, x >= 0, z >= 0}``.

    Returns the reduced point, whether a vertical reflection was applied, and
    the rotation angle that was undone (the azimuth of the possibly reflected point).
    """
    q = GroupPoint.of(q)
    flipped = q.z < 0
    if flipped:
        q = reflect_vertical(q)
    alpha = math.atan2(q.y, q.x)
    return GroupPoint(q.rho, 0.0, q.z), flipped, alpha


def as_points(q) -> np.ndarray:
    """Stack anything point-like into an ``(..., 3)`` float array."""
    arr = np.asarray(q, dtype=float)
    if arr.shape[-1] != 3:
        raise ValueError(f"expected trailing dimension 3, got shape {arr.shape}")
    return arr
