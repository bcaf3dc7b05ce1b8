"""Christoffel-Darboux kernel of the perturbed Pollaczek-Jacobi ensemble.

    K_n(x, y) = sqrt(w(x) w(y)) sum_{i<n} pi_i(x) pi_i(y) / h_i
              = sqrt(w(x) w(y)) (pi_n(x) pi_{n-1}(y) - pi_n(y) pi_{n-1}(x)) / (h_{n-1} (x - y))

The scaled variants only rescale exact kernel values; the limiting kernels
they are compared against live in :mod:`pjop.unikernels`.
"""

from dataclasses import dataclass

import mpmath as mp

from .errors import DegreeOutOfRange, DomainError, ScaledPointOutOfDomain
from .opseq import eval_all, eval_pair
from .weight import log_weight

CONFLUENT_RTOL = mp.mpf("1e-6")
AIRY_SCALE = mp.mpf(3) / 2  # m = (3/2)**(2/3), built at use


@dataclass
class KernelEval:
    n: int
    x: object
    y: object
    value: object


def _check(tab, n, *pts):
    if not 1 <= n <= tab.N:
        raise DegreeOutOfRange(f"kernel degree {n} outside 1..{tab.N}")
    for z in pts:
        if not 0 < z < 1:
            raise DomainError(f"kernel argument {z} outside (0, 1)")


def _sqrt_w(tab, x):
    return mp.exp(log_weight(x, tab.params) / 2)


def kernel_diagonal(tab, n, x):
    """``K_n(x, x)`` from the confluent Christoffel-Darboux formula."""
    with mp.workprec(tab.bits):
        x = mp.mpf(x)
        _check(tab, n, x)
        p0, p1, d0, d1 = eval_pair(tab, n, x)
        w = mp.exp(log_weight(x, tab.params))
        return w * (d1 * p0 - d0 * p1) / tab.h[n - 1]


def kernel(tab, n, x, y):
    """``K_n(x, y)``; switches to the confluent form when ``x`` and ``y`` nearly coincide."""
    with mp.workprec(tab.bits):
        x, y = mp.mpf(x), mp.mpf(y)
        _check(tab, n, x, y)
        if abs(x - y) < CONFLUENT_RTOL * max(abs(x), abs(y)):
            return kernel_diagonal(tab, n, (x + y) / 2)
        px0, px1, _, _ = eval_pair(tab, n, x)
        py0, py1, _, _ = eval_pair(tab, n, y)
        num = px1 * py0 - py1 * px0
        return _sqrt_w(tab, x) * _sqrt_w(tab, y) * num / (tab.h[n - 1] * (x - y))


def kernel_sum(tab, n, x, y):
    """Brute-force ``sqrt(w(x)w(y)) sum_{i<n} pi_i(x) pi_i(y) / h_i``."""
    with mp.workprec(tab.bits):
        x, y = mp.mpf(x), mp.mpf(y)
        _check(tab, n, x, y)
        px = eval_all(tab, n - 1, x)
        py = px if x == y else eval_all(tab, n - 1, y)
        s = mp.fsum(a * b / h for a, b, h in zip(px, py, tab.h))
        return _sqrt_w(tab, x) * _sqrt_w(tab, y) * s


def kernel_eval(tab, n, x, y):
    return KernelEval(n, x, y, kernel(tab, n, x, y))


def density(a):
    """Arcsine density ``1 / (pi sqrt(a (1 - a)))`` on (0, 1)."""
    a = mp.mpf(a)
    return 1 / (mp.pi * mp.sqrt(a * (1 - a)))


def _inside(*pts):
    for z in pts:
        if not 0 < z < 1:
            raise ScaledPointOutOfDomain(f"scaled point {mp.nstr(z, 8)} outside (0, 1)")


def bulk_scaled_kernel(tab, n, a, u, v):
    """``K_n(a + u/(n rho), a + v/(n rho)) / (n rho)`` with ``rho`` the arcsine density."""
    with mp.workprec(tab.bits):
        a, u, v = mp.mpf(a), mp.mpf(u), mp.mpf(v)
        if not 0 < a < 1:
            raise ScaledPointOutOfDomain(f"bulk point {a} outside (0, 1)")
        scale = n * density(a)
        x, y = a + u / scale, a + v / scale
        _inside(x, y)
        return kernel(tab, n, x, y) / scale


def edge_scaled_kernel_right(tab, n, u, v):
    """``K_n(1 - u/(4n^2), 1 - v/(4n^2)) / (4n^2)``."""
    with mp.workprec(tab.bits):
        s = 4 * mp.mpf(n) ** 2
        x, y = 1 - mp.mpf(u) / s, 1 - mp.mpf(v) / s
        _inside(x, y)
        return kernel(tab, n, x, y) / s


def edge_scaled_kernel_left(tab, n, u, v):
    """``K_n(u/(4n^2), v/(4n^2)) / (4n^2)``."""
    with mp.workprec(tab.bits):
        s = 4 * mp.mpf(n) ** 2
        x, y = mp.mpf(u) / s, mp.mpf(v) / s
        _inside(x, y)
        return kernel(tab, n, x, y) / s


def soft_edge_scaling(n, zeta, printed=False):
    """``(s_n, m zeta**(2/9))`` for the Airy scaling at a hard edge.

    The soft edge sits at distance ``s_n = zeta**(2/3) / (4 n^2)`` from the
    endpoint.  ``printed=True`` uses ``zeta**(-2/3) / (4 n^2)`` instead, which
    places the points far inside the essentially-zero region of the weight.
    """
    zeta = mp.mpf(zeta)
    p = -1 if printed else 1
    s_n = zeta ** (p * mp.mpf(2) / 3) / (4 * mp.mpf(n) ** 2)
    width = AIRY_SCALE ** (mp.mpf(2) / 3) * zeta ** (mp.mpf(2) / 9)
    return s_n, width


def soft_edge_scaled_kernel(tab, n, u, v, side="right", zeta=None, printed=False):
    """``(s_n / (m zeta^(2/9))) K_n`` at the points ``1 - s_n (1 - u/(m zeta^(2/9)))``.

    ``side="left"`` mirrors the points to ``s_n (1 - u/(m zeta^(2/9)))``.
    ``zeta`` defaults to ``2 n^2 t``.
    """
    with mp.workprec(tab.bits):
        if zeta is None:
            zeta = 2 * mp.mpf(n) ** 2 * tab.params.tt
        zeta = mp.mpf(zeta)
        if not zeta > 0:
            raise DomainError("soft-edge scaling needs zeta > 0")
        s_n, width = soft_edge_scaling(n, zeta, printed)
        du, dv = s_n * (1 - mp.mpf(u) / width), s_n * (1 - mp.mpf(v) / width)
        if side == "right":
            x, y = 1 - du, 1 - dv
        elif side == "left":
            x, y = du, dv
        else:
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        _inside(x, y)
        return s_n / width * kernel(tab, n, x, y)


def kernel_trace(tab, n, rule):
    """``int_0^1 K_n(x, x) dx`` on ``rule``."""
    with mp.workprec(max(tab.bits, rule.bits)):
        vals = [kernel_diagonal(tab, n, x) for x in rule.nodes]
        return mp.fdot(rule.weights, vals)


def projection_residual(tab, n, x, y, rule):
    """``int K_n(x, z) K_n(z, y) dz - K_n(x, y)`` on ``rule``.

    Uses the sum form on the rule nodes, one evaluation of the polynomial
    stack per node.
    """
    with mp.workprec(max(tab.bits, rule.bits)):
        x, y = mp.mpf(x), mp.mpf(y)
        px = eval_all(tab, n - 1, x)
        py = eval_all(tab, n - 1, y)
        total = mp.mpf(0)
        terms = []
        for z, wq in zip(rule.nodes, rule.weights):
            pz = eval_all(tab, n - 1, z)
            kxz = mp.fsum(a * b / h for a, b, h in zip(px, pz, tab.h))
            kzy = mp.fsum(a * b / h for a, b, h in zip(pz, py, tab.h))
            terms.append(wq * mp.exp(log_weight(z, tab.params)) * kxz * kzy)
        total = mp.fsum(terms)
        total *= _sqrt_w(tab, x) * _sqrt_w(tab, y)
        return total - kernel(tab, n, x, y)
