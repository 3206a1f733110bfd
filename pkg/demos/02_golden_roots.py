"""Roots of two hand-built SNN polynomials whose roots leave the vertical strip."""

from snnroots import HStarVector, find_roots, polish_root

ex10 = HStarVector.of([1, 0, 0, 0, 0, 33])
roots = find_roots(ex10)
print("degree 5, h* = (1,0,0,0,0,33)")
for z in sorted(roots.roots, key=lambda z: (z.real, z.imag)):
    print(f"  {z.real:+.6f} {z.imag:+.6f}i")
print("  root with real part above d - 1 = 4:", f"{roots.nearest(4 + 3j):.5f}")
print("  Newton from 4+3i alone:", f"{polish_root(ex10, 4 + 3j):.5f}")

ex11 = HStarVector.of([1, 2, 3, 4, 6, 10, 16, 27, 43, 69, 112, 181, 293, 473, 762] + [0] * 12)
roots = find_roots(ex11)
z = roots.nearest(26.5 - 28.5j)
print("\ndegree 26, 15 nonzero h* entries")
print(f"  converged: {roots.converged}, worst scaled residual {max(roots.residuals):.1e}")
print(f"  root beyond Re z = 25: {z.real:.8f} {z.imag:+.8f}i")
