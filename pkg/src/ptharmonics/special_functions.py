"""Legendre, associated Legendre, spherical harmonics and generalized Laguerre.

All functions are vectorized over their continuous argument and evaluated by
three-term recurrences. The associated Legendre functions carry the
Condon-Shortley phase ``(-1)**m``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

__all__ = [
    "DomainError",
    "HarmonicIndex",
    "harmonic_indices",
    "flat_index",
    "legendre_p",
    "assoc_legendre",
    "factorial_ratio",
    "spherical_harmonic",
    "laguerre",
]

_U_TOL = 1e-12
_THETA_TOL = 1e-12


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class HarmonicIndex:
    l: int
    m: int

    def __post_init__(self):
        if self.l < 0 or abs(self.m) > self.l:
            raise DomainError(f"invalid harmonic index (l={self.l}, m={self.m})")

    @property
    def flat(self) -> int:
        return flat_index(self.l, self.m)


def flat_index(l: int, m: int) -> int:
    """Position of ``(l, m)`` in the packed ordering ``l*l + l + m``."""
    return l * l + l + m


def harmonic_indices(l_max: int) -> Iterator[HarmonicIndex]:
    """All indices with ``l <= l_max`` in packed order."""
    for l in range(l_max + 1):
        for m in range(-l, l + 1):
            yield HarmonicIndex(l, m)


def _check_finite(x: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{name} contains non-finite values")


def _as_unit_interval(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    _check_finite(u, "u")
    if np.any(np.abs(u) > 1.0 + _U_TOL):
        raise DomainError("argument outside [-1, 1]")
    return np.clip(u, -1.0, 1.0)


def legendre_p(l: int, u):
    """Legendre polynomial ``P_l(u)`` by Bonnet's recurrence."""
    if l < 0:
        raise DomainError("degree must be non-negative")
    u = _as_unit_interval(u)
    p_prev = np.ones_like(u)
    if l == 0:
        return p_prev
    p = u.copy()
    for k in range(1, l):
        p_prev, p = p, ((2 * k + 1) * u * p - k * p_prev) / (k + 1)
    return p


def assoc_legendre(l: int, m: int, u):
    """Associated Legendre function ``P_l^m(u)`` for ``0 <= m <= l``.

    Starts from the closed form of ``P_m^m`` and climbs in degree with the
    standard recurrence at fixed order.
    """
    if m < 0 or m > l:
        raise DomainError(f"order m={m} outside [0, l={l}]")
    u = _as_unit_interval(u)
    if m == 0:
        s = np.ones_like(u)
    else:
        # exact zero at the poles
        s = np.where(np.abs(u) == 1.0, 0.0, np.sqrt(np.maximum(1.0 - u * u, 0.0)))
    double_fact = 1.0
    for k in range(1, 2 * m, 2):
        double_fact *= k
    p_mm = (-1.0) ** m * double_fact * s**m
    if l == m:
        return p_mm
    p_prev, p = p_mm, (2 * m + 1) * u * p_mm
    for k in range(m + 1, l):
        p_prev, p = p, ((2 * k + 1) * u * p - (k + m) * p_prev) / (k - m + 1)
    return p


def factorial_ratio(a: int, b: int) -> float:
    """``a! / b!``, switching to log-gamma once either argument exceeds 30."""
    if max(a, b) <= 30:
        return math.factorial(a) / math.factorial(b)
    return math.exp(math.lgamma(a + 1) - math.lgamma(b + 1))


def spherical_harmonic(l: int, m: int, theta, phi):
    """Orthonormal spherical harmonic ``Y_lm(theta, phi)``.

    Negative orders use ``P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m`` so the
    normalization ``sqrt((2l+1)(l-m)! / (4 pi (l+m)!))`` applies for every m.

    Parameters
    ----------
    l, m : int
        Degree and order, ``|m| <= l``.
    theta : array_like
        Polar angle in ``[0, pi]``.
    phi : array_like
        Azimuth; any real value.

    Returns
    -------
    ndarray of complex
    """
    HarmonicIndex(l, m)
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    _check_finite(theta, "theta")
    _check_finite(phi, "phi")
    if np.any(theta < -_THETA_TOL) or np.any(theta > np.pi + _THETA_TOL):
        raise DomainError("theta outside [0, pi]")
    u = np.cos(np.clip(theta, 0.0, np.pi))
    mu = abs(m)
    plm = assoc_legendre(l, mu, u)
    if m < 0:
        plm = (-1.0) ** mu * factorial_ratio(l - mu, l + mu) * plm
    norm = math.sqrt((2 * l + 1) / (4.0 * math.pi) * factorial_ratio(l - m, l + m))
    azimuth = np.exp(1j * m * np.mod(phi, 2.0 * np.pi))
    return norm * plm * azimuth


def laguerre(n: int, k: int, x):
    """Generalized Laguerre polynomial ``L_n^k(x)`` for ``x >= 0``."""
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")
    x = np.asarray(x, dtype=float)
    _check_finite(x, "x")
    if np.any(x < 0):
        raise DomainError("Laguerre argument must be non-negative")
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev
    l_cur = 1.0 + k - x
    for j in range(1, n):
        l_prev, l_cur = l_cur, ((2 * j + 1 + k - x) * l_cur - (j + k) * l_prev) / (j + 1)
    return l_cur
