"""Universal limit kernels (sine, Bessel, Airy) and comparison reports.

The ``compare_*`` functions put exact rescaled Christoffel-Darboux values
from :mod:`pjop.cdkernel` next to these targets.
"""

from dataclasses import dataclass, field

import mpmath as mp

from . import cdkernel
from .specfun import airy_ai_and_prime, bessel_j_and_prime, bessel_j_general
from .errors import OrderOutOfRange

REL_FLOOR = mp.mpf("1e-8")


def _confluent_tol():
    return mp.ldexp(1, -mp.mp.prec // 2)


def sine_kernel(u, v):
    """``sin(pi (u - v)) / (pi (u - v))``, equal to 1 on the diagonal."""
    d = mp.mpf(u) - mp.mpf(v)
    if d == 0:
        return mp.mpf(1)
    return mp.sinpi(d) / (mp.pi * d)


def bessel_kernel(nu, x, y):
    """Hard-edge Bessel kernel of order ``nu``.

    ``(J(sqrt x) sqrt y J'(sqrt y) - J(sqrt y) sqrt x J'(sqrt x)) / (2 (x - y))``
    """
    if not mp.mpf(nu) > -1:
        raise OrderOutOfRange(f"Bessel kernel order must be > -1, got {nu}")
    x, y = mp.mpf(x), mp.mpf(y)
    if not (x > 0 and y > 0):
        raise ValueError("bessel_kernel needs x, y > 0")
    if abs(x - y) <= _confluent_tol() * max(x, y):
        return bessel_kernel_diagonal(nu, (x + y) / 2)
    sx, sy = mp.sqrt(x), mp.sqrt(y)
    jx, djx = bessel_j_and_prime(nu, sx)
    jy, djy = bessel_j_and_prime(nu, sy)
    return (jx * sy * djy - jy * sx * djx) / (2 * (x - y))


def bessel_kernel_diagonal(nu, x):
    """``(J_nu(sqrt x)^2 - J_{nu+1}(sqrt x) J_{nu-1}(sqrt x)) / 4``."""
    nu, s = mp.mpf(nu), mp.sqrt(mp.mpf(x))
    j = bessel_j_and_prime(nu, s)[0]
    jp = bessel_j_and_prime(nu + 1, s)[0]
    jm = bessel_j_general(nu - 1, s)
    return (j * j - jp * jm) / 4


def airy_kernel(x, y):
    """``(Ai(x) Ai'(y) - Ai(y) Ai'(x)) / (x - y)``."""
    x, y = mp.mpf(x), mp.mpf(y)
    if abs(x - y) <= _confluent_tol() * max(1, abs(x), abs(y)):
        return airy_kernel_diagonal((x + y) / 2)
    ax, dax = airy_ai_and_prime(x)
    ay, day = airy_ai_and_prime(y)
    return (ax * day - ay * dax) / (x - y)


def airy_kernel_diagonal(x):
    """``Ai'(x)^2 - x Ai(x)^2``."""
    a, da = airy_ai_and_prime(x)
    return da * da - mp.mpf(x) * a * a


@dataclass(frozen=True)
class LimitKernelSpec:
    kind: str  # "sine" | "bessel" | "airy"
    order: object = None

    def __post_init__(self):
        if self.kind not in ("sine", "bessel", "airy"):
            raise ValueError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "bessel" and not mp.mpf(self.order) > -1:
            raise OrderOutOfRange(f"Bessel order must be > -1, got {self.order}")

    def __call__(self, u, v):
        if self.kind == "sine":
            return sine_kernel(u, v)
        if self.kind == "bessel":
            return bessel_kernel(self.order, u, v)
        return airy_kernel(u, v)


# -- reports ------------------------------------------------------------------


@dataclass
class ErrorRow:
    point: tuple
    measured: object
    target: object
    abs_err: object
    rel_err: object


@dataclass
class ErrorReport:
    rows: list = field(default_factory=list)

    def add(self, point, measured, target):
        err = abs(measured - target)
        rel = err / max(abs(target), REL_FLOOR)
        self.rows.append(ErrorRow(tuple(point), measured, target, err, rel))

    @property
    def max_abs(self):
        return max(r.abs_err for r in self.rows)

    @property
    def mean_abs(self):
        return mp.fsum(r.abs_err for r in self.rows) / len(self.rows)

    @property
    def max_rel(self):
        return max(r.rel_err for r in self.rows)

    @property
    def mean_rel(self):
        return mp.fsum(r.rel_err for r in self.rows) / len(self.rows)


def _nonempty(grid):
    grid = [tuple(g) for g in grid]
    if not grid:
        raise ValueError("comparison grid is empty")
    return grid


def compare_bulk(tab, n, a, grid):
    """Rescaled bulk kernel at ``a`` against the sine kernel."""
    rep = ErrorReport()
    with mp.workprec(tab.bits):
        for u, v in _nonempty(grid):
            rep.add((u, v), cdkernel.bulk_scaled_kernel(tab, n, a, u, v), sine_kernel(u, v))
    return rep


def compare_hard_edge(tab, n, side, grid):
    """Edge-rescaled kernel against the Bessel kernel (order beta at 1, alpha at 0)."""
    p = tab.params
    if side == "right":
        scaled, order = cdkernel.edge_scaled_kernel_right, p.b
    elif side == "left":
        scaled, order = cdkernel.edge_scaled_kernel_left, p.a
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    rep = ErrorReport()
    with mp.workprec(tab.bits):
        for u, v in _nonempty(grid):
            rep.add((u, v), scaled(tab, n, u, v), bessel_kernel(order, u, v))
    return rep


def compare_soft_edge(tab, n, side, grid, zeta=None, printed=False):
    """Airy-rescaled kernel near an edge against the Airy kernel."""
    rep = ErrorReport()
    with mp.workprec(tab.bits):
        for u, v in _nonempty(grid):
            k = cdkernel.soft_edge_scaled_kernel(tab, n, u, v, side=side, zeta=zeta, printed=printed)
            rep.add((u, v), k, airy_kernel(u, v))
    return rep
