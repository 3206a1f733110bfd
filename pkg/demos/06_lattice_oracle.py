"""Genuine Ehrhart polynomials from lattice-point counts, and where their roots fall."""

import numpy as np

from snnroots import count_dilate, ehrhart_of, find_roots, hstar_of, interior_count
from snnroots.lattice import random_simplex, reeve_simplex, standard_simplex

print("standard triangle, t = 0..4:", [count_dilate(standard_simplex(2), t) for t in range(5)])
for r in (1, 2, 5):
    s = reeve_simplex(r)
    print(f"Reeve r={r}: L(t) = {[str(c) for c in ehrhart_of(s).exact]}, h* = {hstar_of(s).coeffs}, interior {interior_count(s)}")

rng = np.random.default_rng(0)
print("\nrandom tetrahedra with coordinates in [-3, 3]:")
for _ in range(5):
    s = random_simplex(rng, 3)
    h = hstar_of(s)
    roots = find_roots(h).roots
    print(f"  h* = {[int(c) for c in h.coeffs]}, roots real parts in [{min(z.real for z in roots):.3f}, {max(z.real for z in roots):.3f}]")
