"""Where the Wronskian roots of an interlacing pair live.

Run:  python3 demos/omega_region.py [out.svg]

The pair p = (z+4)(z+3)z(z-2), q = (z+3.5)(z+1)(z-1) interlaces.  We
compute the roots of W(p, q) = p'q - pq', check that each one sits in the
region Omega_p (the disk over [p_1, p_k] minus the open disks over each gap
[p_j, p_{j+1}]), then solve p - 4i q = 0 and look at where those roots fall.
"""

import sys

import numpy as np

from hbdisks.geometry import omega_membership, omega_region, omega_intersection_membership
from hbdisks.hermite_biehler import HBInstance, census
from hbdisks.instances import fig1_pair
from hbdisks.roots import hb_roots, wronskian_roots
from hbdisks.svg import atomic_write, omega_svg

pair = fig1_pair()
region = omega_region(pair)
print("p roots:", pair.p_roots)
print("q roots:", pair.q_roots)
print("outer disk:", region.outer.to_dict())
for d in region.inner:
    print("  removed:", d.to_dict())

tau = 1e-7 * max(1.0, pair.scale)
w = np.sort_complex(wronskian_roots(pair).roots)
print(f"\n{w.size} Wronskian roots (they come in conjugate pairs):")
for z in w:
    v = omega_membership(region, z, tau)
    print(f"  {z.real:+.6f} {z.imag:+.6f}i  margin {v.signed_margin:+.4f}"
          f"  in pencil intersection: {bool(omega_intersection_membership(pair, z))}")

# p + lam q with lam = -4i is the same as q/p = r e^{i phi} with r = 1/4, phi = -pi/2
s = np.sort_complex(hb_roots(pair, -4j).roots)
print("\nroots of p - 4i q:")
for z in s:
    print(f"  {z.real:+.6f} {z.imag:+.6f}i")
print("all in the upper half-plane:", bool(np.all(s.imag > 0)))
c = census(HBInstance(pair, 0.25, -np.pi / 2))
print("census by region:", c.to_dict())

out = sys.argv[1] if len(sys.argv) > 1 else "omega_fig1.svg"
atomic_write(out, omega_svg(pair, w, s))
print("\nwrote", out)
