"""
Bessel or Airy at the edge
==========================

Near x = 1 the behaviour of pi_n depends on zeta = 2 n^2 t.  For small zeta
the polynomial looks like a Bessel function (hard edge); for large zeta the
exponential factor opens a gap and Airy takes over (soft edge).
"""

import mpmath as mp

from pjop import WeightParams, build_table, eval_monic
from pjop.asym import airy_edge1_asymptotic, bessel_edge1_asymptotic
from pjop.cdkernel import soft_edge_scaled_kernel
from pjop.unikernels import airy_kernel

mp.mp.prec = 256
n = 32

# tiny t: the Bessel-edge predictor, at x = cos^2(A/2n)
tab, _ = build_table(WeightParams(1, 1, "1e-8"), n)
for A in (1, 3, 6, 9):
    x = mp.cos(mp.mpf(A) / (2 * n)) ** 2
    r = bessel_edge1_asymptotic(n, x, tab.params) / eval_monic(tab, n, x).value
    print(f"Bessel argument {A}: predicted/exact = {mp.nstr(r, 6)}")

# moderate zeta: the Airy-edge predictor.  Its constants are less reliable,
# so the ratios are only rough
zeta = 25
tab, _ = build_table(WeightParams(1, 1, mp.mpf(zeta) / (2 * n * n)), n)
for A in (14, 18):
    x = mp.cos(mp.mpf(A) / (2 * n)) ** 2
    for angle in ("printed", "full"):
        r = airy_edge1_asymptotic(n, x, tab.params, angle=angle) / eval_monic(tab, n, x).value
        print(f"A={A} angle={angle:<7} predicted/exact = {mp.nstr(r, 6)}")

# the rescaled kernel heads toward the Airy kernel only slowly in zeta;
# at this size it is still well short of the limit
for u, v in ((-1, 0), (0, 0), (0, 1)):
    k = soft_edge_scaled_kernel(tab, n, u, v)
    print(f"({u},{v}) scaled kernel {mp.nstr(k, 6)}  Airy kernel {mp.nstr(airy_kernel(u, v), 6)}")
