"""Monic orthogonal polynomials for the perturbed Pollaczek-Jacobi weight.

Recurrence coefficients come from the discretized Stieltjes procedure: the
measure ``w(x) dx`` is replaced by the composite Gauss rule of
:mod:`pjop.mpquad` and the monic polynomials are generated on the nodes,

    pi_{k+1}(x) = (x - a_k) pi_k(x) - b_k pi_{k-1}(x),

with ``a_k = <x pi_k, pi_k> / h_k`` and ``b_k = h_k / h_{k-1}``.
"""

from dataclasses import dataclass

import mpmath as mp

from .errors import DegreeOutOfRange, LostPositivity, ParseError, RangeError
from .mpquad import DEFAULT_PRECISION, PrecisionConfig, auto_rule, weighted_rule
from .weight import WeightParams, weight

TABLE_MAGIC = "pjop-rct"
TABLE_VERSION = "v1"


class UnderResolvedRule(RangeError):
    pass


@dataclass
class RecurrenceTable:
    """Recurrence data for degrees ``0..N``.

    ``a[n]`` and ``h[n]`` are stored for ``n = 0..N``.  ``b[n] = h[n]/h[n-1]``
    for ``n >= 1``; ``b[0]`` holds ``h[0]``, the total mass, following the
    usual Gautschi convention.
    """

    params: WeightParams
    N: int
    a: list
    b: list
    h: list
    bits: int = 256
    quad_spec: tuple = None

    @property
    def gamma(self):
        with mp.workprec(self.bits):
            return [1 / mp.sqrt(hn) for hn in self.h]

    def gamma_sq(self, n):
        with mp.workprec(self.bits):
            return 1 / self.h[n]

    def prec(self):
        return PrecisionConfig(self.bits)


@dataclass
class PolyEval:
    n: int
    x: object
    value: object
    derivative: object


def _check_rule(N, rule):
    if len(rule) < 8 * N:
        raise UnderResolvedRule(
            f"rule has {len(rule)} nodes; degree {N} needs at least {8 * N}"
        )


def stieltjes(p, N, rule):
    """Discretized Stieltjes procedure up to degree ``N``."""
    if N < 1:
        raise RangeError(f"N must be >= 1, got {N}")
    _check_rule(N, rule)
    with mp.workprec(rule.bits):
        xs, ws = weighted_rule(rule, p)
        prev = [mp.mpf(0)] * len(xs)
        cur = [mp.mpf(1)] * len(xs)
        a, b, h = [], [], []
        for k in range(N + 1):
            wc = [w * c for w, c in zip(ws, cur)]
            hk = mp.fdot(wc, cur)
            if not hk > 0:
                raise LostPositivity(f"h_{k} = {hk} is not positive")
            ak = mp.fdot(wc, [x * c for x, c in zip(xs, cur)]) / hk
            bk = hk if k == 0 else hk / h[-1]
            a.append(ak)
            b.append(bk)
            h.append(hk)
            if k == N:
                break
            nxt = [(x - ak) * c - bk * q for x, c, q in zip(xs, cur, prev)] if k else \
                [(x - ak) * c for x, c in zip(xs, cur)]
            prev, cur = cur, nxt
    return RecurrenceTable(p, N, a, b, h, rule.bits, rule.panel_spec)


def build_table(p, N, prec=DEFAULT_PRECISION, **rule_kw):
    """Pick a rule with :func:`pjop.mpquad.auto_rule` and run Stieltjes on it."""
    rule = auto_rule(p, N, prec, **rule_kw)
    return stieltjes(p, N, rule), rule


def _check_degree(tab, n):
    if not 0 <= n <= tab.N:
        raise DegreeOutOfRange(f"degree {n} outside 0..{tab.N}")


def eval_monic(tab, n, x):
    """``pi_n(x)`` and ``pi_n'(x)`` by the recurrence and its derivative.

    ``x`` may be real or complex (mpc).
    """
    _check_degree(tab, n)
    with mp.workprec(tab.bits):
        x = mp.mpmathify(x)
        p0, p1 = mp.mpf(0), mp.mpf(1)
        d0, d1 = mp.mpf(0), mp.mpf(0)
        for k in range(n):
            bk = tab.b[k] if k else 0
            p0, p1 = p1, (x - tab.a[k]) * p1 - bk * p0
            d0, d1 = d1, p0 + (x - tab.a[k]) * d1 - bk * d0
        return PolyEval(n, x, p1, d1)


def eval_pair(tab, n, x):
    """``(pi_{n-1}(x), pi_n(x), pi_{n-1}'(x), pi_n'(x))`` in one sweep."""
    _check_degree(tab, n)
    if n < 1:
        raise DegreeOutOfRange("eval_pair needs n >= 1")
    with mp.workprec(tab.bits):
        x = mp.mpmathify(x)
        p0, p1 = mp.mpf(0), mp.mpf(1)
        d0, d1 = mp.mpf(0), mp.mpf(0)
        for k in range(n):
            bk = tab.b[k] if k else 0
            p0, p1 = p1, (x - tab.a[k]) * p1 - bk * p0
            d0, d1 = d1, p0 + (x - tab.a[k]) * d1 - bk * d0
        return p0, p1, d0, d1


def eval_all(tab, nmax, x):
    """List ``[pi_0(x), ..., pi_nmax(x)]``."""
    _check_degree(tab, nmax)
    with mp.workprec(tab.bits):
        x = mp.mpmathify(x)
        out = [mp.mpf(1)]
        prev = mp.mpf(0)
        for k in range(nmax):
            bk = tab.b[k] if k else 0
            out.append((x - tab.a[k]) * out[-1] - bk * prev)
            prev = out[-2]
        return out


def gram_matrix(tab, rule, nmax=None):
    """``G[i][j] = sum_l w_l pi_i(x_l) pi_j(x_l)`` on ``rule`` for ``i, j <= nmax``."""
    nmax = tab.N if nmax is None else nmax
    with mp.workprec(max(tab.bits, rule.bits)):
        xs, ws = weighted_rule(rule, tab.params)
        cols = [eval_all(tab, nmax, x) for x in xs]
        rows = [[c[i] for c in cols] for i in range(nmax + 1)]
        wrows = [[w * v for w, v in zip(ws, r)] for r in rows]
        return [[mp.fdot(wrows[i], rows[j]) for j in range(nmax + 1)] for i in range(nmax + 1)]


def orthogonality_residual(tab, i, j, rule):
    """``int pi_i pi_j w dx - h_i delta_ij`` evaluated on ``rule``."""
    _check_degree(tab, i)
    _check_degree(tab, j)
    with mp.workprec(max(tab.bits, rule.bits)):
        xs, ws = weighted_rule(rule, tab.params)
        vi = [eval_monic(tab, i, x).value for x in xs]
        vj = vi if i == j else [eval_monic(tab, j, x).value for x in xs]
        val = mp.fdot([w * v for w, v in zip(ws, vi)], vj)
        return val - tab.h[i] if i == j else val


def max_normalized_residual(tab, rule, nmax=None):
    """``max |G_ij - h_i delta_ij| / sqrt(h_i h_j)`` over ``i, j <= nmax``."""
    G = gram_matrix(tab, rule, nmax)
    worst = mp.mpf(0)
    with mp.workprec(tab.bits):
        for i, row in enumerate(G):
            for j, g in enumerate(row):
                r = g - tab.h[i] if i == j else g
                worst = max(worst, abs(r) / mp.sqrt(tab.h[i] * tab.h[j]))
    return worst


def sign_changes(values):
    """Number of strict sign changes in a sequence, ignoring exact zeros."""
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for s, q in zip(signs, signs[1:]) if s != q)


def zeros(tab, n):
    """Zeros of ``pi_n`` as eigenvalues of the ``n x n`` Jacobi matrix."""
    _check_degree(tab, n)
    if n == 0:
        return []
    with mp.workprec(tab.bits):
        J = mp.zeros(n, n)
        for k in range(n):
            J[k, k] = tab.a[k]
            if k:
                J[k, k - 1] = J[k - 1, k] = mp.sqrt(tab.b[k])
        ev = mp.eigsy(J, eigvals_only=True)
        return sorted(ev[k] for k in range(n))


def jacobi_shifted_coefficients(alpha, beta, N, prec=DEFAULT_PRECISION):
    """Closed-form recurrence of the monic Jacobi polynomials on [0, 1].

    For the weight ``x**alpha (1-x)**beta`` this is the classical Jacobi
    recurrence mapped by ``y = 2x - 1``; returned as ``(a, b)`` lists of
    length ``N + 1`` with ``b[0]`` the mass ``B(alpha+1, beta+1)``.
    """
    with prec.context():
        al, be = mp.mpf(alpha), mp.mpf(beta)
        # weight (1-y)^beta (1+y)^alpha on [-1, 1]: Jacobi parameters (beta, alpha)
        A, B = be, al
        a, b = [], []
        for n in range(N + 1):
            s = 2 * n + A + B
            if n == 0:
                an = (B - A) / (A + B + 2)
            else:
                an = (B * B - A * A) / (s * (s + 2))
            a.append((an + 1) / 2)
            if n == 0:
                b.append(mp.beta(al + 1, be + 1))
            elif n == 1:
                bn = 4 * (1 + A) * (1 + B) / ((2 + A + B) ** 2 * (3 + A + B))
                b.append(bn / 4)
            else:
                bn = 4 * n * (n + A) * (n + B) * (n + A + B) / (s * s * (s + 1) * (s - 1))
                b.append(bn / 4)
        return a, b


def write_table(tab, path):
    """Versioned plain-text serialization; see :func:`read_table`."""
    p = tab.params
    with mp.workprec(tab.bits):
        dps = mp.libmp.prec_to_dps(tab.bits) + 3
        lines = [f"{TABLE_MAGIC} {TABLE_VERSION} {p.alpha} {p.beta} {p.t} {tab.N} {tab.bits}"]
        for n in range(tab.N + 1):
            lines.append(
                f"{n} {mp.nstr(tab.a[n], dps, strip_zeros=False)} "
                f"{mp.nstr(tab.b[n], dps, strip_zeros=False)} "
                f"{mp.nstr(tab.h[n], dps, strip_zeros=False)}"
            )
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_table(path):
    with open(path) as fh:
        lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty table file")
    head = lines[0].split()
    if len(head) != 7 or head[0] != TABLE_MAGIC:
        raise ParseError("not a recurrence table", 1)
    if head[1] != TABLE_VERSION:
        raise ParseError(f"unsupported table version {head[1]}", 1)
    alpha, beta, t = head[2:5]
    N, bits = int(head[5]), int(head[6])
    params = WeightParams(alpha, beta, t)
    if len(lines) != N + 2:
        raise ParseError(f"expected {N + 1} rows, found {len(lines) - 1}")
    a, b, h = [], [], []
    with mp.workprec(bits):
        for lineno, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != 4 or int(parts[0]) != lineno - 2:
                raise ParseError("malformed row", lineno)
            a.append(mp.mpf(parts[1]))
            b.append(mp.mpf(parts[2]))
            h.append(mp.mpf(parts[3]))
    return RecurrenceTable(params, N, a, b, h, bits)


def total_weight(p, rule):
    with mp.workprec(rule.bits):
        return mp.fdot(rule.weights, [weight(x, p) for x in rule.nodes])
