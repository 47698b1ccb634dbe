"""Hydrogen and PT-hydrogen eigenstates, dressed Hamiltonian and Runge-Lenz vector.

Atomic units throughout (hbar = m = e = Bohr radius = 1) with the Coulomb
Hamiltonian ``H = p**2 / 2 - Z / r``. Two energies are exposed:
:func:`energy` is the closed form ``-Z / N**2`` as usually quoted for this
construction, :func:`coulomb_energy` is ``-Z**2 / (2 N**2)``, the eigenvalue
of the Hamiltonian actually implemented here. Eigen-residuals and the radial
scale ``alpha = 2 sqrt(-2E)`` use the latter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import fd
from .coords import to_spherical
from .fd import FDStencil, Field, Operator
from .gauges import GaugeFunction
from .quadrature import RadialGrid, SphereGrid, default_radial_grid, default_sphere_grid
from .special_functions import laguerre, spherical_harmonic

__all__ = [
    "HydrogenState",
    "SingularityError",
    "states_up_to",
    "energy",
    "coulomb_energy",
    "alpha",
    "radial_wavefunction",
    "hydrogen_state",
    "pt_hydrogen_state",
    "hydrogen_field",
    "hamiltonian",
    "dressed_hamiltonian",
    "runge_lenz",
    "hf_apply_fd",
    "runge_lenz_apply_fd",
    "overlap_matrix",
    "pt_gram_matrix_3d",
]

# FD sample points closer than this to the nucleus are rejected
SINGULARITY_STEPS = 10.0
# FD sample points closer than this to the nucleus are rejected
MIN_SAMPLE_RADIUS = 0.3


class SingularityError(ValueError):
    """FD stencil reaches too close to the Coulomb singularity at the origin."""


@dataclass(frozen=True)
class HydrogenState:
    N: int
    l: int
    m: int
    Z: float = 1.0

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("principal quantum number must be >= 1")
        if not 0 <= self.l <= self.N - 1:
            raise ValueError(f"l={self.l} invalid for N={self.N}")
        if abs(self.m) > self.l:
            raise ValueError(f"m={self.m} invalid for l={self.l}")
        if not self.Z > 0:
            raise ValueError("nuclear charge must be positive")

    @property
    def n_radial(self) -> int:
        return self.N - self.l - 1

    def label(self) -> str:
        return f"{self.N},{self.l},{self.m}"


def states_up_to(n_max: int, z: float = 1.0) -> Iterator[HydrogenState]:
    for n in range(1, n_max + 1):
        for l in range(n):
            for m in range(-l, l + 1):
                yield HydrogenState(n, l, m, z)


def energy(N: int, Z: float = 1.0) -> float:
    """``-Z / N**2`` (Bohr radius and e set to 1)."""
    if N < 1:
        raise ValueError("principal quantum number must be >= 1")
    return -Z / N**2


def coulomb_energy(N: int, Z: float = 1.0) -> float:
    """Eigenvalue ``-Z**2 / (2 N**2)`` of ``p**2/2 - Z/r``."""
    if N < 1:
        raise ValueError("principal quantum number must be >= 1")
    return -(Z**2) / (2.0 * N**2)


def alpha(N: int, Z: float = 1.0) -> float:
    """Radial scale in ``rho = alpha r``; equals ``2 Z / N``."""
    return 2.0 * math.sqrt(-2.0 * coulomb_energy(N, Z))


def radial_wavefunction(N: int, l: int, Z: float, r):
    """Normalized radial factor ``R_Nl(r)``.

    ``(2/N**2) sqrt(Z**3 (N-l-1)!/(N+l)!) rho**l L_{N-l-1}^{2l+1}(rho) e^{-rho/2}``.
    """
    HydrogenState(N, l, 0, Z)
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise ValueError("r must be non-negative")
    rho = alpha(N, Z) * r
    norm = 2.0 / N**2 * math.sqrt(Z**3 * math.factorial(N - l - 1) / math.factorial(N + l))
    return norm * rho**l * laguerre(N - l - 1, 2 * l + 1, rho) * np.exp(-rho / 2.0)


def hydrogen_state(state: HydrogenState, r, theta, phi):
    return radial_wavefunction(state.N, state.l, state.Z, r) * spherical_harmonic(state.l, state.m, theta, phi)


def pt_hydrogen_state(f: GaugeFunction, state: HydrogenState, r, theta, phi):
    """``e^{f} psi_Nlm``."""
    return np.exp(f.eval(r, theta, phi)) * hydrogen_state(state, r, theta, phi)


def hydrogen_field(state: HydrogenState, f: GaugeFunction | None = None) -> Field:
    """Cartesian field of ``psi_Nlm`` or, with a gauge, of ``e^f psi_Nlm``."""

    def field(x, y, z):
        r, theta, phi = to_spherical(x, y, z)
        if f is None:
            return hydrogen_state(state, r, theta, phi)
        return pt_hydrogen_state(f, state, r, theta, phi)

    return field


def _coulomb(z_charge: float):
    return lambda x, y, z: -z_charge / np.sqrt(x * x + y * y + z * z)


def hamiltonian(z_charge: float, stencil: FDStencil) -> Operator:
    """``H = -lap/2 - Z/r``."""
    potential = _coulomb(z_charge)

    def op(func):
        lap = fd.laplacian(func, stencil)
        return lambda x, y, z: -0.5 * lap(x, y, z) + potential(x, y, z) * func(x, y, z)

    return op


def dressed_hamiltonian(f: GaugeFunction, z_charge: float, stencil: FDStencil) -> Operator:
    """``H_f = (p**2 + 2i grad f . p + lap f - (grad f)**2) / 2 - Z/r``, derivatives of f analytic."""
    potential = _coulomb(z_charge)

    def op(func):
        lap = fd.laplacian(func, stencil)
        grads = [fd.derivative(func, j, stencil) for j in range(3)]

        def out(x, y, z):
            gf = f.gradient_xyz(x, y, z)
            u = func(x, y, z)
            # 2i grad f . p = 2 grad f . grad
            drift = sum(gf[j] * grads[j](x, y, z) for j in range(3))
            shift = f.laplacian_xyz(x, y, z) - (gf[0] ** 2 + gf[1] ** 2 + gf[2] ** 2)
            return -0.5 * lap(x, y, z) + drift + 0.5 * shift * u + potential(x, y, z) * u

        return out

    return op


def runge_lenz(i: int, z_charge: float, stencil: FDStencil, coulomb_weight: float = 1.0) -> Operator:
    """Symmetrized Runge-Lenz component ``(L x p - p x L)_i / 2 + w Z x_i / r``.

    ``w = 1`` is the weight for which the vector commutes with ``p**2/2 - Z/r``;
    ``w = 0.5`` distributes the overall factor 1/2 over the Coulomb term too.
    """
    ang = [fd.angular_momentum(k, stencil) for k in range(3)]
    mom = [fd.momentum(k, stencil) for k in range(3)]
    terms = []
    for j in range(3):
        for k in range(3):
            eps = fd.LEVI_CIVITA[i, j, k]
            if eps:
                terms.append((0.5 * eps, ang[j], mom[k]))
                terms.append((-0.5 * eps, mom[j], ang[k]))

    def op(func):
        parts = [(c, a(b(func))) for c, a, b in terms]
        radial = lambda x, y, z: coulomb_weight * z_charge * (x, y, z)[i] / np.sqrt(x * x + y * y + z * z) * func(x, y, z)
        return fd.combine(*parts, (1.0, radial))

    return op


def _guard(points, stencil: FDStencil, reach: float = 1.0) -> np.ndarray:
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    limit = max(MIN_SAMPLE_RADIUS, SINGULARITY_STEPS * stencil.step * reach)
    if np.any(np.linalg.norm(pts, axis=1) < limit):
        raise SingularityError(f"sample point within r < {limit:g} of the Coulomb singularity")
    return pts


def hf_apply_fd(
    f: GaugeFunction, func: Field, points, stencil: FDStencil = FDStencil(), z_charge: float = 1.0, method: str = "explicit"
) -> np.ndarray:
    """``H_f F`` at points, by the explicit formula or by ``e^f H e^-f``."""
    pts = _guard(points, stencil)
    if method == "explicit":
        op = dressed_hamiltonian(f, z_charge, stencil)
    elif method == "conjugation":
        op = fd.dress(hamiltonian(z_charge, stencil), f)
    else:
        raise ValueError("method must be 'explicit' or 'conjugation'")
    return fd.evaluate(op(func), pts)


def runge_lenz_apply_fd(i, func: Field, points, stencil: FDStencil = FDStencil(order=4), z_charge: float = 1.0) -> np.ndarray:
    pts = _guard(points, stencil, reach=2.0)
    return fd.evaluate(runge_lenz(fd._axis_index(i), z_charge, stencil)(func), pts)


def overlap_matrix(states: Sequence[HydrogenState], radial: RadialGrid | None = None, sphere: SphereGrid | None = None):
    """Ordinary inner products ``<psi'|psi>`` by tensor quadrature in r**2 dr dOmega."""
    radial, sphere = _grids(states, radial, sphere)
    w = _volume_weights(radial, sphere)
    r, theta, phi = _volume_mesh(radial, sphere)
    vals = np.array([hydrogen_state(s, r, theta, phi).ravel() for s in states])
    return (vals.conj() * w) @ vals.T


def pt_gram_matrix_3d(
    f: GaugeFunction, states: Sequence[HydrogenState], radial: RadialGrid | None = None, sphere: SphereGrid | None = None
):
    """PT-inner products ``<psi_f'|psi_f> = integral of PT(psi_f') psi_f`` over r**2 dr dOmega."""
    radial, sphere = _grids(states, radial, sphere)
    w = _volume_weights(radial, sphere)
    r, theta, phi = _volume_mesh(radial, sphere)
    kets = np.array([pt_hydrogen_state(f, s, r, theta, phi).ravel() for s in states])
    bras = np.array([np.conj(pt_hydrogen_state(f, s, r, np.pi - theta, phi + np.pi)).ravel() for s in states])
    return (bras * w) @ kets.T


def _grids(states, radial, sphere):
    if radial is None:
        radial = default_radial_grid(max(s.N for s in states), min(s.Z for s in states))
    if sphere is None:
        sphere = default_sphere_grid(max(s.l for s in states))
    return radial, sphere


def _volume_mesh(radial: RadialGrid, sphere: SphereGrid):
    return np.meshgrid(radial.nodes, sphere.theta_nodes, sphere.phi_nodes, indexing="ij")


def _volume_weights(radial: RadialGrid, sphere: SphereGrid) -> np.ndarray:
    return (radial.weights[:, None, None] * sphere.weights()[None, :, :]).ravel()
