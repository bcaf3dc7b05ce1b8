"""
Recurrence coefficients of a weight with essential zeros
========================================================

The weight x^a (1-x)^b exp(-t/(x(1-x))) vanishes to every order at both
endpoints.  We build its recurrence by discretized Stieltjes and watch what
the exponential factor does to the coefficients and zeros.
"""

import mpmath as mp

from pjop import WeightParams, build_table, jacobi_shifted_coefficients, zeros

mp.mp.prec = 256

# t = 0 is plain Jacobi, so the table can be checked against the closed form
tab, rule = build_table(WeightParams(1, 1, 0), 20)
a, b = jacobi_shifted_coefficients(1, 1, 20)
print("quadrature panels (L, m, r):", rule.panel_spec, "nodes:", len(rule))
print("max |b_n - closed form|:", mp.nstr(max(abs(x - y) for x, y in zip(tab.b, b)), 3))

# switch on t.  b_n -> 1/16 still, but the approach changes
for t in ("0", "0.01", "0.1"):
    tab, _ = build_table(WeightParams(1, 1, t), 20)
    print(f"t={t:<5}", " ".join(mp.nstr(tab.b[n], 6) for n in (1, 5, 10, 20)))

# the smallest zero of pi_n is pushed away from 0 as t grows
for t in ("0", "0.01", "0.1"):
    tab, _ = build_table(WeightParams(1, 1, t), 20)
    print(f"t={t:<5} smallest zero of pi_20:", mp.nstr(zeros(tab, 20)[0], 8))
