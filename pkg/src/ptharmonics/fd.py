"""Finite-difference differential operators acting on Cartesian fields.

A field is a callable ``F(x, y, z)`` returning complex values and vectorized
over arrays. An operator maps a field to a new field, so operators compose
and nest: ``commutator(A, B)(F) = A(B(F)) - B(A(F))``. Every stencil
evaluation of an outer operator re-evaluates its inner field at shifted points.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .coords import to_spherical
from .gauges import GaugeFunction
from .special_functions import spherical_harmonic

__all__ = [
    "FDStencil",
    "LEVI_CIVITA",
    "derivative",
    "second_derivative",
    "laplacian",
    "angular_momentum",
    "momentum",
    "position",
    "multiply",
    "dress",
    "dressed_momentum",
    "commutator",
    "combine",
    "evaluate",
    "richardson",
    "harmonic_field",
    "gaussian_bump",
    "plane_wave",
    "fd_apply_angular_momentum",
    "fd_apply_dressed",
    "fd_apply_dressed_momentum",
]

Field = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]
Operator = Callable[[Field], Field]

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0

_FIRST = {
    2: ((-1, -0.5), (1, 0.5)),
    4: ((-2, 1 / 12), (-1, -8 / 12), (1, 8 / 12), (2, -1 / 12)),
}
_SECOND = {
    2: ((-1, 1.0), (0, -2.0), (1, 1.0)),
    4: ((-2, -1 / 12), (-1, 16 / 12), (0, -30 / 12), (1, 16 / 12), (2, -1 / 12)),
}


@dataclass(frozen=True)
class FDStencil:
    step: float = 1e-3
    order: int = 2

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.order not in (2, 4):
            raise ValueError("order must be 2 or 4")

    def scaled(self, factor: float) -> "FDStencil":
        return FDStencil(self.step * factor, self.order)


def _shift(coords, axis, delta):
    shifted = list(coords)
    shifted[axis] = shifted[axis] + delta
    return shifted


def derivative(func: Field, axis: int, stencil: FDStencil) -> Field:
    """Central first derivative along Cartesian ``axis``."""
    h, taps = stencil.step, _FIRST[stencil.order]

    def d(x, y, z):
        coords = (np.asarray(x, float), np.asarray(y, float), np.asarray(z, float))
        return sum(c * func(*_shift(coords, axis, k * h)) for k, c in taps) / h

    return d


def second_derivative(func: Field, axis: int, stencil: FDStencil) -> Field:
    h, taps = stencil.step, _SECOND[stencil.order]

    def d2(x, y, z):
        coords = (np.asarray(x, float), np.asarray(y, float), np.asarray(z, float))
        return sum(c * func(*_shift(coords, axis, k * h)) for k, c in taps) / (h * h)

    return d2


def laplacian(func: Field, stencil: FDStencil) -> Field:
    parts = [second_derivative(func, ax, stencil) for ax in range(3)]
    return lambda x, y, z: parts[0](x, y, z) + parts[1](x, y, z) + parts[2](x, y, z)


def combine(*terms: tuple[complex, Field]) -> Field:
    """Linear combination ``sum c_k F_k``."""

    def out(x, y, z):
        return sum(c * g(x, y, z) for c, g in terms)

    return out


def multiply(weight: Callable) -> Operator:
    """Multiplication operator by a Cartesian function ``weight(x, y, z)``."""
    return lambda func: (lambda x, y, z: weight(x, y, z) * func(x, y, z))


def position(j: int) -> Operator:
    return multiply(lambda x, y, z: (x, y, z)[j])


def momentum(j: int, stencil: FDStencil) -> Operator:
    """``p_j = -i d/dx_j``."""
    return lambda func: combine((-1j, derivative(func, j, stencil)))


def angular_momentum(axis: int, stencil: FDStencil) -> Operator:
    """``L_i = -i (x_j d_k - x_k d_j)`` with ``(i, j, k)`` cyclic."""
    j, k = (axis + 1) % 3, (axis + 2) % 3

    def op(func):
        dk = derivative(func, k, stencil)
        dj = derivative(func, j, stencil)

        def out(x, y, z):
            c = (x, y, z)
            return -1j * (c[j] * dk(x, y, z) - c[k] * dj(x, y, z))

        return out

    return op


def dress(op: Operator, f: GaugeFunction) -> Operator:
    """Conjugation ``e^f op e^-f``."""

    def dressed(func):
        stripped = lambda x, y, z: np.exp(-f.eval_xyz(x, y, z)) * func(x, y, z)
        inner = op(stripped)
        return lambda x, y, z: np.exp(f.eval_xyz(x, y, z)) * inner(x, y, z)

    return dressed


def dressed_momentum(j: int, f: GaugeFunction, stencil: FDStencil) -> Operator:
    """``p_fj = p_j + i d_j f`` with the analytic gauge gradient."""

    def op(func):
        dj = derivative(func, j, stencil)
        return lambda x, y, z: -1j * dj(x, y, z) + 1j * f.gradient_xyz(x, y, z)[j] * func(x, y, z)

    return op


def commutator(a: Operator, b: Operator, outer_a: Operator | None = None, outer_b: Operator | None = None) -> Operator:
    """``[A, B] F = A(B F) - B(A F)``.

    ``outer_a`` / ``outer_b`` optionally replace an operator when it is applied
    last (e.g. a coarser step for the outer stencil of a nested evaluation).
    """
    outer_a = outer_a or a
    outer_b = outer_b or b
    return lambda func: combine((1.0, outer_a(b(func))), (-1.0, outer_b(a(func))))


def evaluate(func: Field, points) -> np.ndarray:
    """Evaluate a field at points of shape ``(n, 3)``."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    return np.asarray(func(pts[:, 0], pts[:, 1], pts[:, 2]), dtype=complex)


def richardson(coarse, fine, order: int, ratio: float = 2.0):
    """Eliminate the leading ``h**order`` error from two step sizes ``h`` and ``h/ratio``."""
    q = ratio**order
    return (q * np.asarray(fine) - np.asarray(coarse)) / (q - 1.0)


def harmonic_field(l: int, m: int, f: GaugeFunction | None = None) -> Field:
    """``Y_lm`` (optionally dressed by ``e^f``) as a function of direction."""

    def field(x, y, z):
        r, theta, phi = to_spherical(x, y, z)
        y_lm = spherical_harmonic(l, m, theta, phi)
        if f is None:
            return y_lm
        return np.exp(f.eval(r, theta, phi)) * y_lm

    return field


def gaussian_bump(center: Sequence[float]) -> Field:
    cx, cy, cz = (float(c) for c in center)
    return lambda x, y, z: np.exp(-((x - cx) ** 2 + (y - cy) ** 2 + (z - cz) ** 2)) + 0j


def plane_wave(k: Sequence[float]) -> Field:
    kx, ky, kz = (float(c) for c in k)
    return lambda x, y, z: np.exp(1j * (kx * x + ky * y + kz * z))


@functools.lru_cache(maxsize=None)
def _axis_index(axis) -> int:
    if isinstance(axis, str):
        return "xyz".index(axis)
    if axis in (0, 1, 2):
        return int(axis)
    raise ValueError(f"invalid axis {axis!r}")


def fd_apply_angular_momentum(axis, func: Field, point, stencil: FDStencil = FDStencil()) -> complex:
    return complex(evaluate(angular_momentum(_axis_index(axis), stencil)(func), point)[0])


def fd_apply_dressed(axis, f: GaugeFunction, func: Field, point, stencil: FDStencil = FDStencil()) -> complex:
    """``L_fi F = e^f L_i (e^-f F)`` at one point."""
    op = dress(angular_momentum(_axis_index(axis), stencil), f)
    return complex(evaluate(op(func), point)[0])


def fd_apply_dressed_momentum(
    component, f: GaugeFunction, func: Field, point, stencil: FDStencil = FDStencil(), method: str = "explicit"
) -> complex:
    """``p_fj F`` at one point, by the explicit ``p + i grad f`` form or by conjugation."""
    j = _axis_index(component)
    if method == "explicit":
        op = dressed_momentum(j, f, stencil)
    elif method == "conjugation":
        op = dress(momentum(j, stencil), f)
    else:
        raise ValueError("method must be 'explicit' or 'conjugation'")
    return complex(evaluate(op(func), point)[0])
