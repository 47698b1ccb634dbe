"""Gauge functions ``f(r, theta, phi)`` that dress operators as ``e^f O e^-f``.

Each gauge carries its analytic PT-conjugate ``conj(f(r, pi - theta, phi + pi))``,
its Cartesian gradient and its Laplacian. The shifted azimuth ``phi + pi`` is
never reduced modulo 2 pi: for ``f = i a phi`` the reduction would change the
value whenever ``a`` is not an integer.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

import numpy as np

from .coords import spherical_unit_vectors, to_spherical

__all__ = [
    "GaugeFunction",
    "GaugeSpecError",
    "a_theta",
    "ai_sin_theta",
    "a_cos_theta",
    "ai_phi",
    "zero_gauge",
    "GAUGE_FAMILIES",
    "parse_gauge",
]

SphericalFn = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class GaugeSpecError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GaugeFunction:
    """A dressing function with its PT-conjugate and derivatives.

    All callables take ``(r, theta, phi)`` arrays. ``gradient`` returns the
    Cartesian components stacked on the first axis.
    """

    label: str
    eval: SphericalFn
    pt_conjugate_eval: SphericalFn
    gradient: Optional[SphericalFn] = None
    laplacian: Optional[SphericalFn] = None
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name, value in self.params.items():
            if not isinstance(value, numbers.Real):
                raise GaugeSpecError(f"gauge parameter {name}={value!r} must be real")

    def __call__(self, r, theta, phi):
        return self.eval(r, theta, phi)

    @property
    def spec(self) -> str:
        if not self.params:
            return self.label
        args = ",".join(f"{k}={v!r}" for k, v in self.params.items())
        return f"{self.label}:{args}"

    def _require_derivatives(self):
        if self.gradient is None or self.laplacian is None:
            raise NotImplementedError(f"gauge {self.label!r} has no analytic derivatives")

    def eval_xyz(self, x, y, z):
        return self.eval(*to_spherical(x, y, z))

    def gradient_xyz(self, x, y, z):
        self._require_derivatives()
        return self.gradient(*to_spherical(x, y, z))

    def laplacian_xyz(self, x, y, z):
        self._require_derivatives()
        return self.laplacian(*to_spherical(x, y, z))


def _zeros(r, theta, phi):
    return np.zeros(np.broadcast(r, theta, phi).shape, dtype=complex)


def _real_param(a) -> float:
    if isinstance(a, (complex, np.complexfloating)):
        raise GaugeSpecError("gauge parameter a must be real; write factors of i into the family")
    return float(a)


def a_theta(a: float) -> GaugeFunction:
    """``f = a theta``; PT-compatible with ``lambda = e^{a pi}``."""
    a = _real_param(a)

    def grad(r, theta, phi):
        _, e_theta, _ = spherical_unit_vectors(theta, phi)
        return (a / r * e_theta).astype(complex)

    return GaugeFunction(
        "a_theta",
        eval=lambda r, theta, phi: a * theta + 0j * r * phi,
        pt_conjugate_eval=lambda r, theta, phi: a * (np.pi - theta) + 0j * r * phi,
        gradient=grad,
        laplacian=lambda r, theta, phi: a / (r * r * np.tan(theta)) + 0j * phi,
        params={"a": a},
    )


def ai_sin_theta(a: float) -> GaugeFunction:
    """``f = i a sin(theta)``; ``lambda = 1``."""
    a = _real_param(a)

    def grad(r, theta, phi):
        _, e_theta, _ = spherical_unit_vectors(theta, phi)
        return 1j * a * np.cos(theta) / r * e_theta

    return GaugeFunction(
        "ai_sin_theta",
        eval=lambda r, theta, phi: 1j * a * np.sin(theta) + 0 * r * phi,
        pt_conjugate_eval=lambda r, theta, phi: -1j * a * np.sin(theta) + 0 * r * phi,
        gradient=grad,
        laplacian=lambda r, theta, phi: 1j * a * np.cos(2 * theta) / (r * r * np.sin(theta)) + 0 * phi,
        params={"a": a},
    )


def a_cos_theta(a: float) -> GaugeFunction:
    """``f = a cos(theta)``; ``lambda = 1``."""
    a = _real_param(a)

    def grad(r, theta, phi):
        _, e_theta, _ = spherical_unit_vectors(theta, phi)
        return (-a * np.sin(theta) / r * e_theta).astype(complex)

    return GaugeFunction(
        "a_cos_theta",
        eval=lambda r, theta, phi: a * np.cos(theta) + 0j * r * phi,
        pt_conjugate_eval=lambda r, theta, phi: -a * np.cos(theta) + 0j * r * phi,
        gradient=grad,
        laplacian=lambda r, theta, phi: -2.0 * a * np.cos(theta) / (r * r) + 0j * phi,
        params={"a": a},
    )


def ai_phi(a: float) -> GaugeFunction:
    """``f = i a phi``; ``lambda = e^{-i a pi}``.

    ``e^f`` is single-valued on the circle only for integer ``a``; other values
    are evaluated as written on the branch ``phi = atan2(y, x)``.
    """
    a = _real_param(a)

    def grad(r, theta, phi):
        _, _, e_phi = spherical_unit_vectors(theta, phi)
        return 1j * a / (r * np.sin(theta)) * e_phi

    return GaugeFunction(
        "ai_phi",
        eval=lambda r, theta, phi: 1j * a * phi + 0 * r * theta,
        pt_conjugate_eval=lambda r, theta, phi: -1j * a * (phi + np.pi) + 0 * r * theta,
        gradient=grad,
        laplacian=_zeros,
        params={"a": a},
    )


def zero_gauge() -> GaugeFunction:
    return GaugeFunction(
        "zero",
        eval=_zeros,
        pt_conjugate_eval=_zeros,
        gradient=lambda r, theta, phi: np.zeros((3,) + np.broadcast(r, theta, phi).shape, dtype=complex),
        laplacian=_zeros,
    )


GAUGE_FAMILIES: dict[str, Callable[..., GaugeFunction]] = {
    "a_theta": a_theta,
    "ai_sin_theta": ai_sin_theta,
    "a_cos_theta": a_cos_theta,
    "ai_phi": ai_phi,
    "zero": zero_gauge,
}


def parse_gauge(text: str) -> GaugeFunction:
    """Build a gauge from ``name:param=value[,param=value]``, e.g. ``a_theta:a=0.3``."""
    name, _, rest = text.strip().partition(":")
    if name not in GAUGE_FAMILIES:
        raise GaugeSpecError(f"unknown gauge {name!r}; choose from {sorted(GAUGE_FAMILIES)}")
    kwargs = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, value = item.partition("=")
        if not eq:
            raise GaugeSpecError(f"malformed gauge parameter {item!r} in {text!r}")
        try:
            kwargs[key.strip()] = float(value)
        except ValueError:
            raise GaugeSpecError(f"gauge parameter {key.strip()}={value!r} is not a real number") from None
    try:
        return GAUGE_FAMILIES[name](**kwargs)
    except TypeError as exc:
        raise GaugeSpecError(f"bad parameters for gauge {name!r}: {exc}") from None
