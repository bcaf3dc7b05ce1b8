"""Extended-precision composite Gauss-Legendre quadrature on [0, 1].

The interval is split into ``2L`` panels graded geometrically toward both
endpoints, and an ``m``-point Gauss-Legendre rule is mapped onto each panel.
All arithmetic is mpmath at ``PrecisionConfig.bits``.
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import mpmath as mp

from .errors import ConvergenceFailure, InvalidGrading, NonFiniteIntegrand, RangeError
from .weight import weight


@dataclass(frozen=True)
class PrecisionConfig:
    bits: int = 256

    def __post_init__(self):
        if int(self.bits) < 128:
            raise RangeError(f"precision must be at least 128 bits, got {self.bits}")

    def context(self):
        return mp.workprec(int(self.bits))

    @property
    def eps(self):
        return mp.ldexp(1, -int(self.bits))


DEFAULT_PRECISION = PrecisionConfig()


@dataclass
class QuadratureRule:
    nodes: list
    weights: list
    panel_spec: tuple  # (L, m, r)
    bits: int
    breakpoints: list = field(default_factory=list, repr=False)

    def __len__(self):
        return len(self.nodes)

    def refined(self):
        """The same rule with twice as many grading levels."""
        L, m, r = self.panel_spec
        return build_rule(2 * L, m, r, PrecisionConfig(self.bits))


def _legendre_and_derivative(m, x):
    p0, p1 = mp.mpf(1), x
    for k in range(2, m + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = m * (x * p1 - p0) / (x * x - 1)
    return p1, dp


@lru_cache(maxsize=64)
def _gauss_legendre_cached(m, bits):
    with mp.workprec(bits + 20):
        tol = mp.ldexp(1, -bits - 4)
        half = []
        for k in range(1, m // 2 + 1):
            x = mp.mpf(math.cos(math.pi * (k - 0.25) / (m + 0.5)))
            for _ in range(100):
                p, dp = _legendre_and_derivative(m, x)
                dx = p / dp
                x -= dx
                if abs(dx) < tol:
                    break
            else:
                raise ConvergenceFailure(f"Newton failed for Gauss-Legendre node {k} of {m}")
            p, dp = _legendre_and_derivative(m, x)
            half.append((x, 2 / ((1 - x * x) * dp * dp)))
        nodes = [-x for x, _ in half]
        weights = [w for _, w in half]
        if m % 2:
            _, dp = _legendre_and_derivative(m, mp.mpf(0))
            nodes.append(mp.mpf(0))
            weights.append(2 / (dp * dp))
        nodes += [x for x, _ in reversed(half)]
        weights += [w for _, w in reversed(half)]
    with mp.workprec(bits):
        return tuple(+x for x in nodes), tuple(+w for w in weights)


def gauss_legendre(m, prec=DEFAULT_PRECISION):
    """Nodes and weights of the ``m``-point Gauss-Legendre rule on [-1, 1].

    Nodes are the roots of the Legendre polynomial P_m, found by Newton's
    method from the usual cosine initial guesses; they are returned in
    increasing order.
    """
    if m < 1:
        raise RangeError(f"m must be >= 1, got {m}")
    if m == 1:
        return [mp.mpf(0)], [mp.mpf(2)]
    nodes, weights = _gauss_legendre_cached(int(m), int(prec.bits))
    return list(nodes), list(weights)


def breakpoints(L, r, prec=DEFAULT_PRECISION):
    """Panel boundaries ``0, r**(L-1)/2, ..., r/2, 1/2, 1 - r/2, ..., 1``."""
    with prec.context():
        r = mp.mpf(r)
        left = [mp.mpf(0)] + [r ** k / 2 for k in range(L - 1, -1, -1)]
        right = [1 - x for x in reversed(left[:-1])]
        return left + right


def build_rule(L, m, r=0.25, prec=DEFAULT_PRECISION):
    """Composite rule with ``2L`` geometrically graded panels of ``m`` points."""
    if int(L) != L or L < 1 or int(m) != m or m < 2:
        raise InvalidGrading(f"need integers L >= 1 and m >= 2, got L={L}, m={m}")
    if not 0 < float(r) < 1:
        raise InvalidGrading(f"grading ratio must be in (0, 1), got {r}")
    gx, gw = gauss_legendre(m, prec)
    with prec.context():
        bp = breakpoints(L, r, prec)
        nodes, weights = [], []
        for lo, hi in zip(bp[:-1], bp[1:]):
            half = (hi - lo) / 2
            mid = (hi + lo) / 2
            for x, w in zip(gx, gw):
                nodes.append(mid + half * x)
                weights.append(half * w)
    return QuadratureRule(nodes, weights, (int(L), int(m), r), int(prec.bits), bp)


def integrate(f, rule):
    """``sum_i w_i f(x_i)`` at the rule's precision, reduced in node order."""
    with mp.workprec(rule.bits):
        vals = []
        for x in rule.nodes:
            v = f(x)
            if not mp.isfinite(v):
                raise NonFiniteIntegrand(f"integrand is {v} at x={x}")
            vals.append(v)
        return mp.fdot(rule.weights, vals)


def weighted_rule(rule, p):
    """Fold the weight into the rule: returns ``(nodes, w_i * weight(x_i))``."""
    with mp.workprec(rule.bits):
        return list(rule.nodes), [w * weight(x, p) for x, w in zip(rule.nodes, rule.weights)]


def refinement_delta(p, rule):
    """``|int w dx|`` on ``rule`` minus the same on ``rule.refined()``."""
    f = lambda x: weight(x, p)  # noqa: E731
    with mp.workprec(rule.bits):
        return abs(integrate(f, rule) - integrate(f, rule.refined()))


def default_points(N):
    """Points per panel that resolve degree-2N polynomials times the weight."""
    return max(16, N + 24)


def auto_rule(p, N, prec=DEFAULT_PRECISION, m=None, r=0.25, tol=None, L0=4, Lmax=256, mmax=None):
    """Smallest adequate rule: ``L = L0 * 2**k`` levels, then ``m`` grown by half.

    Doubling ``L`` only adds panels at the edges.  The interior panels see a
    non-integer power of ``x`` as a singularity a fixed ratio away, so their
    error falls geometrically in ``m`` and is checked separately against an
    ``m + m//2`` rule.  Both deltas must drop below ``tol``, which defaults to
    ``10**(-bits/4)``.  The total node count is also forced to at least ``8N``.
    """
    m = default_points(N) if m is None else m
    mmax = 4 * m if mmax is None else mmax
    if tol is None:
        tol = mp.mpf(10) ** (-(prec.bits // 4))
    L = max(L0, -(-8 * N // (2 * m)))
    while True:
        rule = build_rule(L, m, r, prec)
        delta = refinement_delta(p, rule)
        if delta < tol:
            break
        if 2 * L > Lmax:
            raise ConvergenceFailure(f"quadrature refinement did not reach {tol} by L={Lmax}")
        L *= 2
    f = lambda x: weight(x, p)  # noqa: E731
    with mp.workprec(prec.bits):
        base = integrate(f, rule)
        while True:
            m_delta = abs(base - integrate(f, build_rule(L, m + m // 2, r, prec)))
            if m_delta < tol:
                break
            if m + m // 2 > mmax:
                raise ConvergenceFailure(f"quadrature did not reach {tol} by m={mmax}")
            m += m // 2
            rule = build_rule(L, m, r, prec)
            base = integrate(f, rule)
    rule.delta = max(delta, m_delta)
    return rule
