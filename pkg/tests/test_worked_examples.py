"""Small worked examples with closed-form or independently derived answers."""
import json

import numpy as np
import pytest

from oracles import rodrigues_legendre
from ptharmonics import fd
from ptharmonics.cli import main
from ptharmonics.fd import FDStencil
from ptharmonics.gauges import a_cos_theta, a_theta, ai_phi, zero_gauge
from ptharmonics.hydrogen import (
    HydrogenState,
    coulomb_energy,
    energy,
    hamiltonian,
    hf_apply_fd,
    hydrogen_field,
    hydrogen_state,
    pt_hydrogen_state,
    radial_wavefunction,
    runge_lenz_apply_fd,
)
from ptharmonics.operators import build_angular_momentum, casimir
from ptharmonics.pt_core import (
    HarmonicCoefficients,
    expand,
    pt_harmonic,
    pt_inner_product,
    pt_transform,
    reconstruct,
)
from ptharmonics.quadrature import (
    default_sphere_grid,
    gauss_legendre,
    integrate_radial,
    integrate_sphere,
    radial_grid,
)
from ptharmonics.special_functions import assoc_legendre, laguerre, legendre_p, spherical_harmonic
from ptharmonics.verification import conservation_residual, gaussian_centers, sample_rng, verify_matrix_vs_fd

GRID = default_sphere_grid(6)
POINT = np.array([0.5, 0.4, -0.6])


def test_low_degree_special_values():
    assert legendre_p(0, 0.3) == 1.0
    assert legendre_p(1, 0.3) == pytest.approx(0.3)
    assert legendre_p(4, 0.5) == pytest.approx(rodrigues_legendre(4)(0.5), abs=1e-15)
    assert assoc_legendre(1, 1, 0.0) == pytest.approx(-1.0)
    assert assoc_legendre(2, 0, 1.0) == pytest.approx(1.0)
    assert spherical_harmonic(0, 0, 1.1, 2.2) == pytest.approx(1 / np.sqrt(4 * np.pi))
    assert spherical_harmonic(1, 0, 0.9, 0.0) == pytest.approx(np.sqrt(3 / (4 * np.pi)) * np.cos(0.9))
    assert laguerre(0, 3, 2.5) == 1.0
    assert laguerre(1, 0, 2.0) == pytest.approx(-1.0)


def test_small_gauss_rules():
    x, w = gauss_legendre(1)
    assert np.allclose(x, [0.0]) and np.allclose(w, [2.0])
    x, w = gauss_legendre(2)
    assert np.allclose(np.sort(x), [-1 / np.sqrt(3), 1 / np.sqrt(3)], atol=1e-15) and np.allclose(w, 1.0)
    x, w = gauss_legendre(3)
    assert np.sum(w * x**4) == pytest.approx(0.4, abs=1e-15)


def test_sphere_and_radial_integrals():
    theta, phi = GRID.mesh()
    assert abs(integrate_sphere(np.abs(spherical_harmonic(2, 2, theta, phi)) ** 2, GRID) - 1) < 1e-13
    assert abs(integrate_sphere(np.cos(theta), GRID)) < 1e-14
    rg = radial_grid(60.0, 120)
    assert abs(integrate_radial(np.exp(-rg.nodes), rg) - 2) < 1e-10
    assert integrate_radial(np.zeros_like(rg.nodes), rg) == 0
    assert abs(integrate_radial(radial_wavefunction(1, 0, 1.0, rg.nodes) ** 2, rg) - 1) < 1e-10


def test_pt_transform_examples():
    c = 0.3 - 1.2j
    assert pt_transform(lambda r, t, p: c + 0 * t)(1.0, 0.4, 0.5) == np.conj(c)
    a = 0.5
    g = pt_transform(lambda r, t, p: np.exp(1j * a * p))(1.0, 0.7, 0.0)
    assert abs(g - np.exp(-1j * a * np.pi)) < 1e-15


def test_dressed_harmonic_examples():
    assert pt_harmonic(zero_gauge(), 3, 1, 1.0, 0.7, 0.2) == spherical_harmonic(3, 1, 0.7, 0.2)
    val = pt_harmonic(a_cos_theta(0.4), 0, 0, 1.0, 0.7, 0.2)
    assert abs(val - np.exp(0.4 * np.cos(0.7)) / np.sqrt(4 * np.pi)) < 1e-15
    f = a_theta(0.3)
    lhs = pt_transform(lambda r, t, p: pt_harmonic(f, 2, 1, r, t, p))(1.0, 0.7, 0.2)
    rhs = np.exp(np.conj(f.eval(1.0, np.pi - 0.7, 0.2 + np.pi))) * np.conj(spherical_harmonic(2, 1, 0.7, 0.2))
    assert abs(lhs - rhs) < 1e-14


def test_pt_inner_product_examples():
    f = a_theta(0.3)
    y = lambda l, m: (lambda r, t, p: pt_harmonic(f, l, m, r, t, p))
    assert abs(pt_inner_product(y(2, 1), y(2, 1), GRID) - np.exp(0.3 * np.pi)) < 1e-12
    assert abs(pt_inner_product(y(1, 0), y(2, 0), GRID)) < 1e-13
    y31 = lambda r, t, p: spherical_harmonic(3, 1, t, p)
    assert abs(pt_inner_product(y31, y31, GRID) + 1) < 1e-13


def test_expand_examples():
    f = ai_phi(0.5)
    lam = np.exp(-0.5j * np.pi)
    c = expand(lambda r, t, p: pt_harmonic(f, 3, -2, r, t, p), f, lam, 4, GRID)
    unit = np.zeros(25, complex)
    unit[9 + 3 - 2] = 1
    assert np.max(np.abs(c.coeffs - unit)) < 1e-12
    assert np.all(expand(lambda r, t, p: 0 * t + 0j, f, lam, 4, GRID).coeffs == 0)
    g = a_cos_theta(0.3)
    func = lambda r, t, p: np.exp(g.eval(r, t, p)) * (2 * spherical_harmonic(0, 0, t, p) + 1j * spherical_harmonic(1, 1, t, p))
    c = expand(func, g, 1.0, 3, GRID)
    assert abs(c[0, 0] - 2) < 1e-10 and abs(c[1, 1] - 1j) < 1e-10
    assert np.max(np.abs(np.delete(c.coeffs, [0, 3]))) < 1e-10


def test_reconstruct_examples():
    f = a_theta(0.3)
    c = expand(lambda r, t, p: pt_harmonic(f, 2, 2, r, t, p), f, np.exp(0.3 * np.pi), 4, GRID)
    t, p = np.linspace(0.1, 3.0, 15), np.linspace(0.0, 6.2, 15)
    assert np.max(np.abs(reconstruct(c, f, 1.0, t, p) - pt_harmonic(f, 2, 2, 1.0, t, p))) < 1e-9
    assert np.all(reconstruct(HarmonicCoefficients.zeros(3), f, 1.0, t, p) == 0)


def test_matrix_examples():
    for axis in "xyz":
        assert build_angular_momentum(axis, 3).block(0).tolist() == [[0]]
    assert np.allclose(casimir(4).block(3), 12 * np.eye(7), atol=1e-13)
    eig = np.sort(np.linalg.eigvalsh(casimir(3).to_dense()))
    assert np.allclose(eig, sorted(l * (l + 1) for l in range(4) for _ in range(2 * l + 1)), atol=1e-12)


def test_fd_angular_momentum_examples():
    assert abs(fd.fd_apply_angular_momentum("z", fd.harmonic_field(1, 0), POINT)) < 1e-6
    y11 = fd.harmonic_field(1, 1)
    assert abs(fd.fd_apply_angular_momentum("z", y11, POINT) - y11(*POINT)) < 1e-6
    y21 = fd.harmonic_field(2, 1)
    lx = build_angular_momentum("x", 2).block(2)[:, 3]
    by_matrix = sum(c * fd.harmonic_field(2, m)(*POINT) for c, m in zip(lx, range(-2, 3)))
    assert abs(fd.fd_apply_angular_momentum("x", y21, POINT) - by_matrix) < 1e-5


def test_matrix_vs_fd_examples():
    pts = np.array([POINT, [0.3, -0.8, 0.1]])
    assert verify_matrix_vs_fd(3, pts, FDStencil(1e-3)) < 1e-5
    ratio = verify_matrix_vs_fd(3, pts, FDStencil(2e-3)) / verify_matrix_vs_fd(3, pts, FDStencil(1e-3))
    assert ratio == pytest.approx(4.0, rel=0.05)
    assert verify_matrix_vs_fd(0, pts) == 0.0


def test_dressed_generator_examples():
    f = a_cos_theta(0.3)
    yf = fd.harmonic_field(2, -1, f)
    assert abs(fd.fd_apply_dressed("z", f, yf, POINT) + yf(*POINT)) < 1e-5
    g = fd.gaussian_bump((0.1, 0.0, 0.2))
    for axis in "xyz":
        assert fd.fd_apply_dressed(axis, zero_gauge(), g, POINT) == fd.fd_apply_angular_momentum(axis, g, POINT)
    w = fd.plane_wave((0.4, -0.2, 0.9))
    assert abs(fd.fd_apply_dressed_momentum("z", zero_gauge(), w, POINT) - 0.9 * w(*POINT)) < 1e-6


def test_dressed_closure_shrinks_with_h():
    f = a_theta(0.5)
    g = fd.gaussian_bump((0.2, 0.1, 0.0))

    def defect(h):
        ops = [fd.dress(fd.angular_momentum(i, FDStencil(h)), f) for i in range(3)]
        val = fd.evaluate(fd.commutator(ops[0], ops[1])(g), POINT) - 1j * fd.evaluate(ops[2](g), POINT)
        return abs(val[0])

    assert defect(5e-4) < defect(2e-3) < 1e-4


def test_energy_examples():
    assert energy(1, 1.0) == -1.0
    assert energy(2, 1.0) == -0.25
    assert energy(3, 2.0) == pytest.approx(-2 / 9)
    assert coulomb_energy(3, 2.0) == pytest.approx(-4 / 18)


def test_state_examples():
    assert radial_wavefunction(3, 2, 1.0, 0.0) == 0.0
    s = HydrogenState(1, 0, 0)
    assert hydrogen_state(s, 0.0, 0.3, 0.1) == pytest.approx(2.0 / np.sqrt(4 * np.pi))
    assert pt_hydrogen_state(zero_gauge(), HydrogenState(3, 2, -1), 1.4, 0.6, 2.0) == hydrogen_state(
        HydrogenState(3, 2, -1), 1.4, 0.6, 2.0
    )


def test_hamiltonian_examples():
    pt = [POINT]
    psi = hydrogen_field(HydrogenState(1, 0, 0))
    assert abs(hf_apply_fd(zero_gauge(), psi, pt)[0] - coulomb_energy(1) * psi(*POINT)) < 1e-5
    f = a_cos_theta(0.3)
    psi_f = hydrogen_field(HydrogenState(2, 1, 0), f)
    for method in ("explicit", "conjugation"):
        assert abs(hf_apply_fd(f, psi_f, pt, method=method)[0] - coulomb_energy(2) * psi_f(*POINT)) < 1e-5


def test_runge_lenz_examples():
    stencil = FDStencil(4e-3, 4)
    psi = hydrogen_field(HydrogenState(1, 0, 0))
    rz = lambda x, y, z: runge_lenz_apply_fd(2, psi, np.column_stack([x, y, z]), stencil)
    pts = np.array([[0.9, 0.3, 0.5], [-0.4, 1.1, 0.2]])
    hv = fd.evaluate(hamiltonian(1.0, stencil.scaled(10))(rz), pts)
    assert np.max(np.abs(hv - coulomb_energy(1) * fd.evaluate(rz, pts))) < 1e-4


@pytest.mark.slow
def test_bare_runge_lenz_conserved_without_gauge():
    rng = sample_rng(11)
    funcs = [fd.gaussian_bump(c) for c in gaussian_centers(rng, 1)]
    pts = np.array([[0.9, 0.4, 0.6], [-1.0, 0.5, -0.3]])
    assert conservation_residual("Rf", zero_gauge(), funcs, pts)["extrapolated"] < 1e-5


def test_cli_examples(capsys):
    assert main(["verify-orthonormality", "--gauge", "a_theta:a=0.3", "--lmax", "6"]) == 0
    doc = json.loads(capsys.readouterr().out)
    diag = {r["check_id"]: r["observed"]["re"] for r in doc["records"] if r["check_id"].startswith("G[")}
    assert diag["G[2,0]"] == pytest.approx(np.exp(0.3 * np.pi), abs=1e-12)
    assert diag["G[3,1]"] == pytest.approx(-np.exp(0.3 * np.pi), abs=1e-12)
    assert main(["verify-orthonormality", "--gauge", "zero", "--lmax", "4"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["records"][1]["observed"]["re"] == pytest.approx(-1.0, abs=1e-13)
    assert main(["verify-so3", "--lmax", "12"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["summary"]["max_deviation"] < 1e-13
