"""Dressed angular momentum rotates p_f = p + i grad f, but not the bare p.

The defects below are Richardson limits of nested finite differences, so
anything near 1e-8 is zero and anything near 1e-1 is a genuine gap.
"""
from ptharmonics.fd import FDStencil
from ptharmonics.gauges import a_theta
from ptharmonics.verification import gaussian_centers, sample_rng, sphere_points, verify_nonrotation_of_p

rng = sample_rng(42)
points = sphere_points(rng, 5)
centers = gaussian_centers(rng, 2)

for a in (0.0, 0.1, 0.5, 1.0):
    rep = verify_nonrotation_of_p(a_theta(a), points, FDStencil(1e-2), centers)
    print(f"a = {a:3.1f}   [Lf, p] defect {rep.bare_extrapolated:9.3e}   [Lf, p_f] defect {rep.dressed_extrapolated:9.3e}")

rep = verify_nonrotation_of_p(a_theta(0.5), points, FDStencil(1e-2), centers)
print("\nper pair, a = 0.5:")
for pair, value in rep.per_pair.items():
    print(f"  {pair:12s} {value:.3e}")
