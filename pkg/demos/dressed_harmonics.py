"""Dressed spherical harmonics: compatibility constants, PT-Gram matrix, expansions.

Run with ``python demos/dressed_harmonics.py``.
"""
import numpy as np

from ptharmonics import (
    check_compatibility,
    default_sphere_grid,
    expand,
    parse_gauge,
    pt_gram_matrix,
    reconstruct,
)

grid = default_sphere_grid(6)

# Each gauge f fixes a constant lambda = exp(f*(PT point) + f(point)).
for spec in ["a_theta:a=0.5", "ai_sin_theta:a=0.5", "a_cos_theta:a=0.5", "ai_phi:a=0.5"]:
    c = check_compatibility(parse_gauge(spec), grid)
    print(f"{spec:22s} lambda = {c.lam:.12f}   spread {c.max_deviation:.1e}")

# The Gram matrix under the PT product is diagonal with entries (-1)^l lambda.
f = parse_gauge("a_theta:a=0.3")
lam = check_compatibility(f, grid).lam
gram = pt_gram_matrix(f, 3, grid)
print("\ndiag of PT-Gram, l <= 3:")
print(np.round(np.diag(gram).real, 10))
print("largest off-diagonal entry:", np.max(np.abs(gram - np.diag(np.diag(gram)))))

# Expand e^f times a smooth, non-band-limited function and watch the error fall.
target = lambda r, t, p: np.exp(f.eval(r, t, p)) * np.exp(np.sin(t) * np.cos(p))
t_chk, p_chk = np.linspace(0.2, 2.9, 40), np.linspace(0.1, 6.1, 40)
print("\nl_max   max error")
for l_max in (2, 4, 6, 8, 10, 12):
    c = expand(target, f, lam, l_max, default_sphere_grid(l_max))
    err = np.max(np.abs(reconstruct(c, f, 1.0, t_chk, p_chk) - target(1.0, t_chk, p_chk)))
    print(f"{l_max:5d}   {err:.2e}")
