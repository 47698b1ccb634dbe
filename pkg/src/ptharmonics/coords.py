from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["SphericalPoint", "to_spherical", "to_cartesian", "spherical_unit_vectors"]


@dataclass(frozen=True)
class SphericalPoint:
    r: float
    theta: float
    phi: float

    def cartesian(self) -> np.ndarray:
        return np.array(to_cartesian(self.r, self.theta, self.phi))

    @classmethod
    def from_cartesian(cls, x: float, y: float, z: float) -> "SphericalPoint":
        r, theta, phi = to_spherical(x, y, z)
        return cls(float(r), float(theta), float(phi))


def to_spherical(x, y, z):
    """``(r, theta, phi)`` with ``phi = atan2(y, x)`` in ``(-pi, pi]``."""
    x, y, z = (np.asarray(c, dtype=float) for c in (x, y, z))
    r = np.sqrt(x * x + y * y + z * z)
    with np.errstate(invalid="ignore", divide="ignore"):
        theta = np.arccos(np.clip(np.where(r > 0, z / r, 1.0), -1.0, 1.0))
    return r, theta, np.arctan2(y, x)


def to_cartesian(r, theta, phi):
    st = np.sin(theta)
    return r * st * np.cos(phi), r * st * np.sin(phi), r * np.cos(theta)


def spherical_unit_vectors(theta, phi):
    """Cartesian components of ``e_r``, ``e_theta``, ``e_phi``; each of shape ``(3, ...)``."""
    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    e_r = np.stack([st * cp, st * sp, ct])
    e_theta = np.stack([ct * cp, ct * sp, -st])
    e_phi = np.stack([-sp, cp, np.zeros_like(st * sp)])
    return e_r, e_theta, e_phi
