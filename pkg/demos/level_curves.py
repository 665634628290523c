"""Level curves of |q/p| inside one diameter disk.

Run:  python3 demos/level_curves.py [out.svg]

On the half-circle over [p_j, p_{j+1}] the modulus |R| has a single minimum m,
attained at a point P.  Below m the set |R| = r inside the disk is one oval
around q_j; above m it breaks into two arcs that cross the real segment.
This script walks through that picture for p = (z+3)(z+1)(z-1)(z-3),
q = (z+2)(z-0.5)(z-2) on the middle disk.
"""

import sys

import numpy as np

from hbdisks.analysis import critical_values, level_curve_sweep, min_modulus_on_halfcircle
from hbdisks.instances import fig7_pair
from hbdisks.svg import atomic_write, level_svg

pair = fig7_pair()
j = 2
m, P = min_modulus_on_halfcircle(pair, j)
print(f"disk {j} spans [{pair.p_roots[j - 1]}, {pair.p_roots[j]}]")
print(f"m = {m:.6f} attained at P = {P.real:.6f} + {P.imag:.6f}i")

ratios = [0.25, 0.5, 0.75, 1.0, 1.5, 2.5, 4.0]
for rep in level_curve_sweep(pair, j, ratios, grid=512):
    print(f"  r = {rep.r / m:4.2f} m: {rep.classification:11s}"
          f" ({rep.component_count} component(s), {rep.real_crossings} real crossings)")

# m sits just above the smallest critical value here, so the bound
# "m below every critical value" fails on this disk
cv = np.sort(np.abs(critical_values(pair)))
print(f"\nleast |critical value| = {cv[0]:.6f}, m - that = {m - cv[0]:+.6f}")

out = sys.argv[1] if len(sys.argv) > 1 else "levels_fig7.svg"
atomic_write(out, level_svg(pair, j))
print("wrote", out)
