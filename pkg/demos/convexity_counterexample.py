"""|R|^2 along a half-circle need not be convex.

Run:  python3 demos/convexity_counterexample.py

Parameterize the upper half-circle over [p_j, p_{j+1}] by the real part x
and set Phi(x) = |R(z)|^2.  For the degree-2 pair (z^2 - 1, z) this is
1/(4(1 - x^2)), convex.  For p-roots (0, 1.25, 2.375) and q-roots (1, 1.375)
Phi bends the wrong way near x = 1.08 on the first disk, yet it still has a
single minimum, which is all the level-curve picture relies on.
"""

import numpy as np

from hbdisks.analysis import convexity_check, phi
from hbdisks.instances import quadratic_pair
from hbdisks.polynomial import InterlacingPair

quad = quadratic_pair()
x = np.linspace(-0.9, 0.9, 7)
print("quadratic pair, Phi vs 1/(4(1-x^2)):")
for xi, a, b in zip(x, phi(quad, 1, x), 1 / (4 * (1 - x**2))):
    print(f"  x = {xi:+.2f}  {a:.12f}  {b:.12f}")

pair = InterlacingPair.from_roots([0.0, 1.25, 2.375], [1.0, 1.375])
rep = convexity_check(pair, 1, n_grid=2048)
print(f"\ncounterexample, disk 1: min second difference {rep.min_second_difference:.3e}"
      f" (threshold {rep.threshold:.1e}) -> convex = {rep.convex}")

xs = np.linspace(0.0, 1.25, 2051)[1:-1]
vals = phi(pair, 1, xs)
d = np.sign(np.diff(vals))
print("number of monotonicity changes:", int(np.sum(d[1:] != d[:-1])))
i = int(np.argmin(vals))
print(f"single minimum at x = {xs[i]:.4f}, Phi = {vals[i]:.6f}")
