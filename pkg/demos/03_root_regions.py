"""Where SNN roots can live: angle sums, the traced boundary, and the region predicates.

Writes demos/output/boundary_d{3,5}.svg with the root disc and the excluded cones overlaid.
"""

import math
from pathlib import Path

from snnroots import angle_sum, common_halfplane, max_angle, region_contains, trace_boundary
from snnroots.lab import atomic_write, boundary_svg
from snnroots.regions import SNN_DEGREE2, braun_disc, cone_union, vertical_strip

out = Path(__file__).with_name("output")
out.mkdir(exist_ok=True)

print("angle sum at 4+3i for d=5:", round(angle_sum(4 + 3j, 5), 4), "> pi:", angle_sum(4 + 3j, 5) > math.pi)
print("basis values in a common half-plane at 4+3i:", common_halfplane(4 + 3j, 5))
print("d=3 angle maxima on Re z = 2:", [round(max_angle(3, j), 4) for j in range(3)], "sum < pi")

for d in (2, 3, 5):
    curve = trace_boundary(d, 64)
    right = max(p.real for p in curve.points)
    print(f"d={d}: {len(curve.points)} boundary samples, rightmost Re = {right:.4f} (strip edge {d - 1})")
    if d > 2:
        atomic_write(str(out / f"boundary_d{d}.svg"), boundary_svg(curve))

z = complex(-0.5, math.sqrt(3) / 2)
print("\nroot of M_2 on the degree-2 SNN circle:", region_contains(SNN_DEGREE2, z))
print("5 in the cone around the positive axis (d=2):", region_contains(cone_union(2), 5))
print("-1/2 + 3i on the boundary of the d=2 root disc:", region_contains(braun_disc(2), -0.5 + 3j))
print("4.1 + 2.9i in the d=5 strip:", region_contains(vertical_strip(5), 4.1 + 2.9j))
