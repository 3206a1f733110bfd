"""How far out the extremal roots go: b_d from the cotangent equation against computed roots."""

import math

from snnroots import growth_table, p_d, solve_bd

print("b_2 =", solve_bd(2), "vs sqrt(3)/2 =", math.sqrt(3) / 2)
print("p_20(b_20) - pi/2 =", p_d(solve_bd(20), 20) - math.pi / 2)
print()
print(f"{'d':>3} {'b_d':>12} {'max Im M_d':>12} {'d^2/pi':>10} {'max|z+1/2| S_d':>15} {'d(d+2)/2pi':>11}")
for r in growth_table(2, 25):
    print(f"{r.d:>3} {r.b_d:12.6f} {r.md_max_imag:12.6f} {r.asym_md:10.4f} {r.sd_max_norm:15.6f} {r.asym_sd:11.4f}")
