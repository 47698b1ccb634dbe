"""Gauss-Legendre rules, sphere grids and radial grids."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .special_functions import legendre_p

__all__ = [
    "ConvergenceError",
    "gauss_legendre",
    "SphereGrid",
    "sphere_grid",
    "default_sphere_grid",
    "RadialGrid",
    "radial_grid",
    "default_radial_grid",
    "integrate_sphere",
    "integrate_radial",
    "integrate_volume",
]

_NEWTON_TOL = 1e-15
_NEWTON_MAXITER = 100


class ConvergenceError(RuntimeError):
    pass


def _legendre_and_derivative(n: int, u: np.ndarray):
    p_n = legendre_p(n, u)
    p_nm1 = legendre_p(n - 1, u)
    dp = n * (u * p_n - p_nm1) / (u * u - 1.0)
    return p_n, dp


def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (increasing) and weights of the ``n``-point rule on ``[-1, 1]``.

    Roots of ``P_n`` are found by Newton iteration from Chebyshev-like initial
    guesses; the rule is exact for polynomials of degree ``2n - 1``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return np.zeros(1), np.full(1, 2.0)
    k = np.arange(1, n + 1)
    u = -np.cos(np.pi * (k - 0.25) / (n + 0.5))
    for _ in range(_NEWTON_MAXITER):
        p, dp = _legendre_and_derivative(n, u)
        du = p / dp
        u = u - du
        if np.max(np.abs(du)) < _NEWTON_TOL:
            break
    else:
        raise ConvergenceError(f"Newton iteration for n={n} did not converge")
    _, dp = _legendre_and_derivative(n, u)
    w = 2.0 / ((1.0 - u * u) * dp * dp)
    # enforce exact mirror symmetry of the rule
    u = 0.5 * (u - u[::-1])
    w = 0.5 * (w + w[::-1])
    return u, w


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """Tensor grid: Gauss-Legendre in ``cos(theta)`` times uniform ``phi``."""

    u_nodes: np.ndarray
    theta_weights: np.ndarray
    phi_nodes: np.ndarray

    def __post_init__(self):
        for arr in (self.u_nodes, self.theta_weights, self.phi_nodes):
            arr.setflags(write=False)

    @property
    def theta_nodes(self) -> np.ndarray:
        return np.arccos(self.u_nodes)

    @property
    def phi_weight(self) -> float:
        return 2.0 * np.pi / self.n_phi

    @property
    def n_theta(self) -> int:
        return self.u_nodes.size

    @property
    def n_phi(self) -> int:
        return self.phi_nodes.size

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_theta, self.n_phi)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """``(theta, phi)`` arrays of shape ``(n_theta, n_phi)``."""
        return np.meshgrid(self.theta_nodes, self.phi_nodes, indexing="ij")

    def weights(self) -> np.ndarray:
        return np.outer(self.theta_weights, np.full(self.n_phi, self.phi_weight))

    def sample(self, func, r: float = 1.0) -> np.ndarray:
        """Evaluate ``func(r, theta, phi)`` on every node."""
        theta, phi = self.mesh()
        return np.broadcast_to(np.asarray(func(r, theta, phi)), self.shape)


def sphere_grid(n_theta: int, n_phi: int) -> SphereGrid:
    if n_theta < 1 or n_phi < 1:
        raise ValueError("grid sizes must be positive")
    u, w = gauss_legendre(n_theta)
    phi = 2.0 * np.pi * np.arange(n_phi) / n_phi
    return SphereGrid(u, w, phi)


def default_sphere_grid(l_max: int) -> SphereGrid:
    """Grid oversized beyond exact degree so smooth gauge factors integrate to ~1e-10."""
    return sphere_grid(2 * l_max + 16, 2 * (2 * l_max) + 16)


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """Radial nodes with weights that already include the ``r**2`` Jacobian."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        if np.any(self.nodes <= 0) or np.any(np.diff(self.nodes) <= 0):
            raise ValueError("radial nodes must be positive and strictly increasing")
        for arr in (self.nodes, self.weights):
            arr.setflags(write=False)


def radial_grid(r_cut: float, n: int) -> RadialGrid:
    """Gauss-Legendre rule mapped to ``[0, r_cut]`` with the ``r**2`` measure folded in."""
    u, w = gauss_legendre(n)
    r = 0.5 * r_cut * (u + 1.0)
    return RadialGrid(r, 0.5 * r_cut * w * r * r)


def default_radial_grid(n_principal: int, z: float = 1.0) -> RadialGrid:
    return radial_grid(40.0 * n_principal**2 / z, 64 + 16 * n_principal)


def integrate_sphere(samples, grid: SphereGrid) -> complex:
    samples = np.asarray(samples)
    if samples.shape != grid.shape:
        raise ValueError(f"samples have shape {samples.shape}, grid is {grid.shape}")
    return complex(grid.theta_weights @ samples.sum(axis=1) * grid.phi_weight)


def integrate_radial(samples, grid: RadialGrid) -> complex:
    samples = np.asarray(samples)
    if samples.shape != grid.nodes.shape:
        raise ValueError(f"samples have shape {samples.shape}, grid has {grid.nodes.size} nodes")
    return complex(grid.weights @ samples)


def integrate_volume(samples, radial: RadialGrid, sphere: SphereGrid):
    """Integrate samples of shape ``(..., n_r, n_theta, n_phi)`` over r**2 dr dOmega."""
    samples = np.asarray(samples)
    if samples.shape[-3:] != (radial.nodes.size,) + sphere.shape:
        raise ValueError("samples do not match the product grid")
    angular = samples.sum(axis=-1) @ sphere.theta_weights * sphere.phi_weight
    return angular @ radial.weights
