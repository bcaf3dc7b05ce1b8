"""
Sine kernel in the bulk
=======================

Rescaled around an interior point, the Christoffel-Darboux kernel tends to
sin(pi(u-v))/(pi(u-v)) whatever the weight.  Here we check it at a = 1/2.
"""

import mpmath as mp

from pjop import WeightParams, build_table, kernel_diagonal
from pjop.cdkernel import bulk_scaled_kernel, density
from pjop.unikernels import sine_kernel

mp.mp.prec = 256
tab, _ = build_table(WeightParams(1, 1, "0.001"), 48)

for n in (12, 24, 48):
    err = max(abs(bulk_scaled_kernel(tab, n, "0.5", u, 0) - sine_kernel(u, 0)) for u in (0.25, 0.5, 1, 1.5))
    print(f"n={n:<3} max |K - sine| on a few points: {mp.nstr(err, 4)}")

# one-point function: K_n(y, y)/n against the arcsine density
for y in ("0.1", "0.3", "0.5"):
    print(f"y={y}: K_n(y,y)/n / density = {mp.nstr(kernel_diagonal(tab, 48, y) / 48 / density(y), 6)}")
