"""Numerical verification of the operator identities.

Matrix identities are exact up to roundoff. Pointwise checks use nested
finite differences; where the exact residual is zero they are reported as the
Richardson extrapolation of two step sizes ``h`` and ``h/2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import fd
from .fd import FDStencil, LEVI_CIVITA
from .gauges import GaugeFunction
from .hydrogen import dressed_hamiltonian, runge_lenz
from .operators import AXES, build_angular_momentum
from .special_functions import harmonic_indices

__all__ = [
    "sample_rng",
    "sphere_points",
    "shell_points",
    "gaussian_centers",
    "so3_residuals",
    "verify_matrix_vs_fd",
    "observed_order",
    "generator_defect",
    "position_defect",
    "NonRotationReport",
    "verify_nonrotation_of_p",
    "conservation_residual",
]


def sample_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; identical seeds give identical sample points on every platform."""
    return np.random.Generator(np.random.PCG64(seed))


def sphere_points(rng: np.random.Generator, n: int, radius: float = 1.0, z_max: float = 0.9) -> np.ndarray:
    """Points on a sphere with ``|z| < z_max * radius``, away from the polar axis."""
    z = rng.uniform(-z_max, z_max, n)
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    s = np.sqrt(1.0 - z * z)
    return radius * np.column_stack([s * np.cos(phi), s * np.sin(phi), z])


def shell_points(rng: np.random.Generator, n: int, r_min: float, r_max: float, z_max: float = 0.9) -> np.ndarray:
    radii = rng.uniform(r_min, r_max, n)
    return sphere_points(rng, n, z_max=z_max) * radii[:, None]


def gaussian_centers(rng: np.random.Generator, n: int, scale: float = 0.7) -> np.ndarray:
    return rng.normal(scale=scale, size=(n, 3))


def so3_residuals(l_max: int) -> dict[str, float]:
    """Max-abs residuals of the cyclic relations, Casimir commutators and Casimir blocks."""
    from .operators import casimir, commutator

    lx, ly, lz = (build_angular_momentum(ax, l_max) for ax in AXES)
    l2 = casimir(l_max)
    out = {
        "[Lx,Ly]-iLz": (commutator(lx, ly) - 1j * lz).max_abs(),
        "[Lz,Lx]-iLy": (commutator(lz, lx) - 1j * ly).max_abs(),
        "[Ly,Lz]-iLx": (commutator(ly, lz) - 1j * lx).max_abs(),
    }
    for name, op in zip(AXES, (lx, ly, lz)):
        out[f"[L2,L{name}]"] = commutator(l2, op).max_abs()
    out["L2-l(l+1)I"] = max(
        float(np.max(np.abs(b - l * (l + 1) * np.eye(2 * l + 1)))) for l, b in enumerate(l2.blocks)
    )
    return out


def verify_matrix_vs_fd(l_max: int, points, stencil: FDStencil = FDStencil()) -> float:
    """Max over axes, ``(l, m)`` and points of ``|L_i Y_lm (FD) - sum_m' L[m', m] Y_lm'|``."""
    pts = np.atleast_2d(points)
    worst = 0.0
    for axis, name in enumerate(AXES):
        mat = build_angular_momentum(name, l_max)
        for idx in harmonic_indices(l_max):
            by_fd = fd.evaluate(fd.angular_momentum(axis, stencil)(fd.harmonic_field(idx.l, idx.m)), pts)
            column = mat.block(idx.l)[:, idx.m + idx.l]
            by_matrix = sum(
                c * fd.evaluate(fd.harmonic_field(idx.l, mp), pts)
                for c, mp in zip(column, range(-idx.l, idx.l + 1))
                if c != 0
            )
            worst = max(worst, float(np.max(np.abs(by_fd - by_matrix))))
    return worst


def observed_order(residuals: Sequence[float], steps: Sequence[float]) -> np.ndarray:
    """Convergence orders ``log(r_k / r_k+1) / log(h_k / h_k+1)`` between successive steps."""
    r = np.asarray(residuals, dtype=float)
    h = np.asarray(steps, dtype=float)
    return np.log(r[:-1] / r[1:]) / np.log(h[:-1] / h[1:])


def _momentum_ops(f: GaugeFunction | None, stencil: FDStencil):
    if f is None:
        return [fd.momentum(j, stencil) for j in range(3)]
    return [fd.dressed_momentum(j, f, stencil) for j in range(3)]


def generator_defect(
    f: GaugeFunction, funcs: Sequence[fd.Field], points, stencil: FDStencil, dressed_p: bool
) -> np.ndarray:
    """Values of ``([L_fi, q_j] - i eps_ijk q_k) F`` for all ``i, j``, test functions and points.

    ``q`` is ``p_f`` when ``dressed_p`` is set, the bare ``p`` otherwise.
    Returns an array of shape ``(3, 3, n_funcs, n_points)``.
    """
    pts = np.atleast_2d(points)
    moms = _momentum_ops(f if dressed_p else None, stencil)
    out = np.empty((3, 3, len(funcs), len(pts)), dtype=complex)
    for i in range(3):
        lf = fd.dress(fd.angular_momentum(i, stencil), f)
        for j in range(3):
            k = 3 - i - j if i != j else None
            for n, func in enumerate(funcs):
                val = fd.evaluate(fd.commutator(lf, moms[j])(func), pts)
                if k is not None:
                    val = val - 1j * LEVI_CIVITA[i, j, k] * fd.evaluate(moms[k](func), pts)
                out[i, j, n] = val
    return out


def position_defect(f: GaugeFunction, funcs: Sequence[fd.Field], points, stencil: FDStencil) -> np.ndarray:
    """Values of ``([L_fi, x_j] - i eps_ijk x_k) F``; shape ``(3, 3, n_funcs, n_points)``."""
    pts = np.atleast_2d(points)
    out = np.empty((3, 3, len(funcs), len(pts)), dtype=complex)
    for i in range(3):
        lf = fd.dress(fd.angular_momentum(i, stencil), f)
        for j in range(3):
            k = 3 - i - j if i != j else None
            for n, func in enumerate(funcs):
                val = fd.evaluate(fd.commutator(lf, fd.position(j))(func), pts)
                if k is not None:
                    val = val - 1j * LEVI_CIVITA[i, j, k] * fd.evaluate(fd.position(k)(func), pts)
                out[i, j, n] = val
    return out


@dataclass
class NonRotationReport:
    """Defects of the rotation relations for bare and dressed momentum.

    ``bare`` entries stay finite as ``h -> 0``; ``dressed`` entries vanish.
    """

    steps: tuple[float, float]
    bare_raw: tuple[float, float]
    bare_extrapolated: float
    dressed_raw: tuple[float, float]
    dressed_extrapolated: float
    per_pair: dict[str, float] = field(default_factory=dict)


def verify_nonrotation_of_p(
    f: GaugeFunction, points, stencil: FDStencil = FDStencil(1e-2), centers=None
) -> NonRotationReport:
    """Show that ``L_f`` rotates ``p_f`` but not ``p``.

    Test functions are Gaussian bumps ``exp(-|x - x0|**2)``, one per center.
    """
    if centers is None:
        centers = gaussian_centers(sample_rng(0), 2)
    funcs = [fd.gaussian_bump(c) for c in centers]
    fine = stencil.scaled(0.5)
    results = {}
    for dressed in (False, True):
        coarse_v = generator_defect(f, funcs, points, stencil, dressed)
        fine_v = generator_defect(f, funcs, points, fine, dressed)
        extrap = fd.richardson(coarse_v, fine_v, stencil.order)
        results[dressed] = (coarse_v, fine_v, extrap)
    per_pair = {}
    for i in range(3):
        for j in range(3):
            per_pair[f"[Lf{AXES[i]},p{AXES[j]}]"] = float(np.max(np.abs(results[False][2][i, j])))
    mx = lambda a: float(np.max(np.abs(a)))
    return NonRotationReport(
        steps=(stencil.step, fine.step),
        bare_raw=(mx(results[False][0]), mx(results[False][1])),
        bare_extrapolated=mx(results[False][2]),
        dressed_raw=(mx(results[True][0]), mx(results[True][1])),
        dressed_extrapolated=mx(results[True][2]),
        per_pair=per_pair,
    )


_GENERATORS = ("L", "Lf", "Rf")


def conservation_residual(
    generator: str,
    f: GaugeFunction,
    funcs: Sequence[fd.Field],
    points,
    z_charge: float = 1.0,
    stencil: FDStencil = FDStencil(4e-3, order=4),
    outer_factor: float = 10.0,
    coulomb_weight: float = 1.0,
) -> dict[str, float]:
    """Richardson-extrapolated ``max |[A_i, H_f] F|`` for ``A`` in ``{L, Lf, Rf}``.

    Nested evaluation: the operator applied last uses ``outer_factor`` times
    the inner step. ``Rf`` is ``e^f R e^-f`` by conjugation; ``H_f`` uses the
    explicit drift form.
    """
    if generator not in _GENERATORS:
        raise ValueError(f"generator must be one of {_GENERATORS}")
    pts = np.atleast_2d(points)

    def values(inner: FDStencil) -> np.ndarray:
        outer = inner.scaled(outer_factor)
        h_in, h_out = dressed_hamiltonian(f, z_charge, inner), dressed_hamiltonian(f, z_charge, outer)
        out = []
        for i in range(3):
            if generator == "L":
                a_in, a_out = fd.angular_momentum(i, inner), fd.angular_momentum(i, outer)
            elif generator == "Lf":
                a_in, a_out = (fd.dress(fd.angular_momentum(i, s), f) for s in (inner, outer))
            else:
                a_in, a_out = (fd.dress(runge_lenz(i, z_charge, s, coulomb_weight), f) for s in (inner, outer))
            comm = fd.commutator(a_in, h_in, a_out, h_out)
            out.append([fd.evaluate(comm(func), pts) for func in funcs])
        return np.array(out)

    coarse = values(stencil)
    fine = values(stencil.scaled(0.5))
    extrap = fd.richardson(coarse, fine, stencil.order)
    return {
        "coarse": float(np.max(np.abs(coarse))),
        "fine": float(np.max(np.abs(fine))),
        "extrapolated": float(np.max(np.abs(extrap))),
        **{f"{generator}{AXES[i]}": float(np.max(np.abs(extrap[i]))) for i in range(3)},
    }
