"""PT transform, compatibility of gauges, PT-spherical harmonics and expansions.

Fields on the sphere are callables ``F(r, theta, phi)``. The PT-inner product
evaluates the bra at the literally shifted point ``(pi - theta, phi + pi)``, so
the bra must be a callable; the ket may be a callable or grid samples.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .gauges import GaugeFunction
from .quadrature import SphereGrid, integrate_sphere
from .special_functions import flat_index, harmonic_indices, spherical_harmonic

__all__ = [
    "pt_transform",
    "PTCompatibility",
    "Incompatible",
    "check_compatibility",
    "pt_harmonic",
    "harmonic_table",
    "pt_inner_product",
    "pt_gram_matrix",
    "HarmonicCoefficients",
    "expand",
    "reconstruct",
]

Field = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]

DEFAULT_COMPAT_TOL = 1e-10


def pt_transform(func: Field) -> Field:
    """Return ``G(r, theta, phi) = conj(F(r, pi - theta, phi + pi))``."""

    def transformed(r, theta, phi):
        return np.conj(func(r, np.pi - np.asarray(theta), np.asarray(phi) + np.pi))

    return transformed


@dataclass(frozen=True)
class PTCompatibility:
    lam: complex
    max_deviation: float

    def __post_init__(self):
        if self.lam == 0:
            raise ValueError("lambda must be non-zero")


class Incompatible(Exception):
    """The gauge does not make ``e^{f*(PT point) + f(point)}`` constant."""

    def __init__(self, max_deviation: float, lam: complex, label: str = ""):
        self.max_deviation = max_deviation
        self.lam = lam
        self.label = label
        super().__init__(
            f"gauge {label or '?'} is not PT-compatible: "
            f"max |g - mean(g)| = {max_deviation:.3e} around mean {lam:.6g}"
        )


def check_compatibility(
    f: GaugeFunction, grid: SphereGrid, r_sample: float = 1.0, tol: float = DEFAULT_COMPAT_TOL
) -> PTCompatibility:
    """Detect the constant ``lambda`` of a gauge or raise :class:`Incompatible`.

    ``lambda`` is the plain mean of ``g = exp(f_pt + f)`` over the grid nodes;
    the test passes iff ``max |g - lambda| <= tol * (1 + |lambda|)``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    theta, phi = grid.mesh()
    g = np.exp(f.pt_conjugate_eval(r_sample, theta, phi) + f.eval(r_sample, theta, phi))
    lam = complex(np.mean(g))
    deviation = float(np.max(np.abs(g - lam)))
    if not np.isfinite(deviation) or deviation > tol * (1.0 + abs(lam)):
        raise Incompatible(deviation, lam, f.spec)
    return PTCompatibility(lam, deviation)


def pt_harmonic(f: GaugeFunction, l: int, m: int, r, theta, phi):
    """Dressed harmonic ``e^{f} Y_lm``."""
    return np.exp(f.eval(r, theta, phi)) * spherical_harmonic(l, m, theta, phi)


def harmonic_table(l_max: int, theta, phi) -> np.ndarray:
    """All ``Y_lm`` for ``l <= l_max`` stacked in packed order on axis 0."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    shape = np.broadcast(theta, phi).shape
    out = np.empty(((l_max + 1) ** 2,) + shape, dtype=complex)
    for idx in harmonic_indices(l_max):
        out[idx.flat] = spherical_harmonic(idx.l, idx.m, theta, phi)
    return out


def _samples(field: Union[Field, np.ndarray], grid: SphereGrid, r: float) -> np.ndarray:
    if callable(field):
        return grid.sample(field, r)
    field = np.asarray(field)
    if field.shape != grid.shape:
        raise ValueError(f"samples have shape {field.shape}, grid is {grid.shape}")
    return field


def pt_inner_product(bra: Field, ket: Union[Field, np.ndarray], grid: SphereGrid, r: float = 1.0) -> complex:
    """``<bra|ket> = integral of PT(bra) * ket`` over the sphere; no further conjugation."""
    left = grid.sample(pt_transform(bra), r)
    return integrate_sphere(left * _samples(ket, grid, r), grid)


def pt_gram_matrix(f: GaugeFunction, l_max: int, grid: SphereGrid, r: float = 1.0) -> np.ndarray:
    """Matrix ``G[(l',m'), (l,m)] = <Y_f l'm' | Y_f lm>`` in packed order."""
    theta, phi = grid.mesh()
    kets = np.exp(f.eval(r, theta, phi)) * harmonic_table(l_max, theta, phi)
    theta_pt, phi_pt = np.pi - theta, phi + np.pi
    bras = np.conj(np.exp(f.eval(r, theta_pt, phi_pt)) * harmonic_table(l_max, theta_pt, phi_pt))
    w = grid.weights().ravel()
    k = kets.shape[0]
    return (bras.reshape(k, -1) * w) @ kets.reshape(k, -1).T


@dataclass(frozen=True, eq=False)
class HarmonicCoefficients:
    l_max: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != ((self.l_max + 1) ** 2,):
            raise ValueError(f"expected {(self.l_max + 1) ** 2} coefficients, got {self.coeffs.shape}")

    @classmethod
    def zeros(cls, l_max: int) -> "HarmonicCoefficients":
        return cls(l_max, np.zeros((l_max + 1) ** 2, dtype=complex))

    def __getitem__(self, lm: tuple[int, int]) -> complex:
        l, m = lm
        if l > self.l_max or abs(m) > l:
            raise IndexError(lm)
        return complex(self.coeffs[flat_index(l, m)])


def expand(
    func: Union[Field, np.ndarray],
    f: GaugeFunction,
    lam: complex,
    l_max: int,
    grid: SphereGrid,
    r: float = 1.0,
) -> HarmonicCoefficients:
    """Coefficients ``a_lm = (-1)^l / lam * <Y_f lm | F>`` for ``l <= l_max``."""
    theta, phi = grid.mesh()
    theta_pt, phi_pt = np.pi - theta, phi + np.pi
    bras = np.conj(np.exp(f.eval(r, theta_pt, phi_pt)) * harmonic_table(l_max, theta_pt, phi_pt))
    values = _samples(func, grid, r) * grid.weights()
    k = bras.shape[0]
    inner = bras.reshape(k, -1) @ values.ravel()
    signs = np.array([(-1.0) ** idx.l for idx in harmonic_indices(l_max)])
    return HarmonicCoefficients(l_max, signs * inner / lam)


def reconstruct(c: HarmonicCoefficients, f: GaugeFunction, r, theta, phi):
    """Truncated series ``sum a_lm e^f Y_lm`` at the given points."""
    table = harmonic_table(c.l_max, theta, phi)
    return np.exp(f.eval(r, theta, phi)) * np.tensordot(c.coeffs, table, axes=1)
