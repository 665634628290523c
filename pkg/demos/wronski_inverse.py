"""Recovering an interlacing pair from its Wronskian.

Run:  python3 demos/wronski_inverse.py

Normalize p and q to be monic with the p-roots summing to zero.  The map
(p, q) -> W(p, q) is then one to one onto the monic polynomials of degree
2k - 2 that are positive on the real line.  We take a random pair, forget
it, and recover it from W by path following.
"""

import numpy as np

from hbdisks.polynomial import RealPolynomial, wronskian
from hbdisks.rng import gen
from hbdisks.wronski import NormalizedPair, invert_wronskian, is_in_pol

target = NormalizedPair.from_pair(gen(7, 5))
u = wronskian(target.p, target.q)
print("u = W(p, q), coefficients:", np.round(u.coeffs, 6))
print("monic and positive on R:", is_in_pol(u))

found, stats = invert_wronskian(u, return_stats=True)
# a and b hold the coefficients of p and q below the leading 1
print("\nrecovered p coefficients:", found.a)
print("original  p coefficients:", target.a)
print("recovered q coefficients:", found.b)
print("original  q coefficients:", target.b)
print("recovered p roots:", np.round(found.to_pair().p_roots, 6))
err = np.max(np.abs(np.concatenate([found.a - target.a, found.b - target.b])))
print(f"max coefficient error {err:.2e}; {stats.steps} steps, {stats.rejected} rejected,"
      f" worst Jacobian condition {stats.max_condition:.1e}")

# the smallest case is explicit: z^2 + 1 = W(z^2 - 1, z)
two = invert_wronskian(RealPolynomial([1.0, 0.0, 1.0]))
print("\nz^2 + 1 comes from p = z^2 + (%g), q = z + (%g)" % (two.a[0], two.b[0]))
