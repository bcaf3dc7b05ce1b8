"""Leading-order large-n asymptotics of the monic polynomials.

Contents:

* the conformal frame: ``phi``, the Szego function ``D``, and the local
  conformal maps ``f1`` (at 1) and ``f0`` (at 0);
* predictors for ``pi_n`` off the interval, in the bulk, and at each hard
  edge in both the Bessel (``zeta -> 0``) and Airy (``zeta -> oo``) regimes,
  with ``zeta = 2 n^2 t``.

Predictors return the leading term only.  Correction terms are measured
against exact polynomials, never modelled.
"""

from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, RegimeViolation, TooCloseToCut
from .specfun import airy_ai_and_prime, bessel_j_and_prime
from .weight import log_weight

BESSEL_ARG_CAP = 40


# -- conformal frame ----------------------------------------------------------


def _root_ratio(z):
    """``sqrt(1 - 1/z)``; analytic off [0, 1] with nonnegative real part."""
    return mp.sqrt(1 - 1 / mp.mpmathify(z))


def phi(z):
    """``2z - 1 + 2 sqrt(z (z - 1))`` mapping C minus [0, 1] outside the unit disc.

    Written as ``(sqrt z + sqrt(z - 1))**2`` so the branch is right in every
    quadrant; real ``x`` in (0, 1) returns the upper boundary value.
    """
    z = mp.mpmathify(z)
    return (mp.sqrt(z) + mp.sqrt(z - 1)) ** 2


def phi_plus(x):
    """Upper boundary value ``exp(2i arccos sqrt x)`` on (0, 1)."""
    return mp.expjpi(2 * mp.acos(mp.sqrt(x)) / mp.pi)


def h_log_phi(z):
    """``log phi(z)``, analytic off ``(-inf, 1]``."""
    z = mp.mpmathify(z)
    return 2 * mp.log(mp.sqrt(z) + mp.sqrt(z - 1))


def szego_D(z, p):
    """Szego function of ``x^alpha (1-x)^beta``: ``D_+ D_- = w`` on (0, 1).

    ``D(z) = z^(alpha/2) (z-1)^(beta/2) / phi(z)^((alpha+beta)/2)``, evaluated
    as ``g^alpha g1^beta`` with ``g = sqrt(z/phi)`` and ``g1 = sqrt((z-1)/phi)``;
    both lie in the right half-plane, so principal powers are analytic off
    the cut.
    """
    s = _root_ratio(z)
    g = 1 / (1 + s)
    g1 = s / (1 + s)
    return g ** p.a * g1 ** p.b


def szego_D_infinity(p):
    return mp.mpf(2) ** (-(p.a + p.b))


def a_quarter(z):
    """``((z - 1)/z)**(1/4)`` with the principal branch."""
    return mp.sqrt(_root_ratio(z))


def f1(z):
    """``(log phi(z))**2``: conformal near 1, ``f1(z) ~ 4 (z - 1)``."""
    return h_log_phi(z) ** 2


def f0(z):
    """``(log(phi(z)/phi(0)))**2``: conformal near 0, ``f0(z) ~ -4 z``.

    ``phi(0) = -1`` is approached from the upper half-plane, where
    ``log phi(0) = i pi``.
    """
    z = mp.mpmathify(z)
    return (h_log_phi(z) - mp.mpc(0, 1) * mp.pi) ** 2


@dataclass(frozen=True)
class ConformalFrame:
    """The analytic objects bundled for one weight."""

    params: object

    def phi(self, z):
        return phi(z)

    def D(self, z):
        return szego_D(z, self.params)

    @property
    def D_infinity(self):
        return szego_D_infinity(self.params)

    def f1(self, z):
        return f1(z)

    def f0(self, z):
        return f0(z)

    def a_quarter(self, z):
        return a_quarter(z)


# -- outer and bulk -------------------------------------------------------------


def distance_to_cut(z):
    z = mp.mpmathify(z)
    x, y = mp.re(z), mp.im(z)
    cx = min(max(x, 0), 1)
    return mp.hypot(x - cx, y)


def outer_asymptotic(n, z, p, delta=mp.mpf("1e-3")):
    """Leading term of ``pi_n(z)`` for ``z`` away from [0, 1].

        4^-n phi^n (D_inf / D(z)) (a + 1/a)/2 exp(t / (2 z (1 - z)))

    which equals ``2^-(2n+alpha+beta+1) phi^((2n+alpha+beta+1)/2)
    (z-1)^(-(2 beta+1)/4) z^(-(2 alpha+1)/4) exp(t/(2z(1-z)))`` wherever the
    latter's principal powers are continuous.
    """
    z = mp.mpmathify(z)
    if distance_to_cut(z) < delta:
        raise TooCloseToCut(f"z={z} within {delta} of [0, 1]")
    a = a_quarter(z)
    val = (phi(z) / 4) ** n * szego_D_infinity(p) / szego_D(z, p) * (a + 1 / a) / 2
    return val * mp.exp(p.tt / (2 * z * (1 - z)))


def outer_asymptotic_direct(n, z, p):
    """The closed form with principal fractional powers, for cross-checks."""
    z = mp.mpmathify(z)
    e = 2 * n + p.a + p.b + 1
    return (
        mp.mpf(2) ** (-e)
        * phi(z) ** (e / 2)
        * (z - 1) ** (-(2 * p.b + 1) / 4)
        * z ** (-(2 * p.a + 1) / 4)
        * mp.exp(p.tt / (2 * z * (1 - z)))
    )


def _check_interior(x):
    x = mp.mpf(x)
    if not 0 < x < 1:
        raise DomainError(f"x={x} outside (0, 1)")
    return x


def bulk_amplitude(n, x, p):
    """Envelope ``2^-(2n+alpha+beta) / (sqrt(w) (x(1-x))^(1/4))`` of the bulk term."""
    x = _check_interior(x)
    return mp.mpf(2) ** (-(2 * n + p.a + p.b)) * mp.exp(-log_weight(x, p) / 2) / mp.root(x * (1 - x), 4)


def bulk_phase(n, x, p):
    s = mp.acos(mp.sqrt(x))
    return (2 * n + p.a + p.b + 1) * s - p.b * mp.pi / 2 - mp.pi / 4


def bulk_asymptotic(n, x, p, margin=0):
    """Leading oscillatory term of ``pi_n(x)`` inside (0, 1)."""
    x, margin = _check_interior(x), mp.mpf(margin)
    if x < margin or x > 1 - margin:
        raise DomainError(f"x={x} within {margin} of an edge")
    return bulk_amplitude(n, x, p) * mp.cos(bulk_phase(n, x, p))


def bulk_zeros(n, p):
    """Zeros of the bulk cosine, as points of (0, 1), in increasing order."""
    c = 2 * n + p.a + p.b + 1
    out = []
    k = 0
    while True:
        # phase = (k + 1/2) pi
        s = ((k + mp.mpf(1) / 2) * mp.pi + p.b * mp.pi / 2 + mp.pi / 4) / c
        if s >= mp.pi / 2:
            break
        if s > 0:
            out.append(mp.cos(s) ** 2)
        k += 1
    return sorted(out)


# -- hard-edge context ----------------------------------------------------------


@dataclass
class EdgeAsymptoticsContext:
    """Scaling quantities at one edge for one ``(n, x)``.

    ``arg`` is the Bessel argument ``2n arccos sqrt x`` at the right edge, or
    ``n (pi - 2 arccos sqrt x)`` at the left edge.  The Airy fields
    (``lambda_abs`` onward) are ``None`` when ``zeta = 0``.
    """

    side: str
    n: int
    x: object
    zeta: object
    s: object  # arccos sqrt x
    arg: object
    theta1: object
    theta2: object
    theta3: object
    theta4: object
    lambda_abs: object = None
    xi: object = None
    b: object = None
    d11: object = None
    d12: object = None
    d21: object = None
    d22: object = None


AIRY_ANGLES = ("printed", "full")


def airy_constants(zeta, lam, order, angle="printed"):
    """``(b, d11, d12, d21, d22)`` for ``|lambda| = lam > 1`` and Bessel order ``order``.

    The trigonometric factors use the angle ``(order/2) arccos(1/sqrt(lam))``
    by default.  ``angle="full"`` doubles it, which is the version that
    tracks the exact polynomials as ``n`` grows.
    """
    if angle not in AIRY_ANGLES:
        raise ValueError(f"angle must be one of {AIRY_ANGLES}, got {angle!r}")
    zeta, lam, order = mp.mpf(zeta), mp.mpf(lam), mp.mpf(order)
    if not lam > 1:
        raise RegimeViolation(f"Airy constants need |lambda| > 1, got {mp.nstr(lam, 6)}")
    c = mp.mpf(3) / 2
    scale = order / 2 if angle == "printed" else order
    ang = scale * mp.acos(1 / mp.sqrt(lam))
    co, si = mp.cos(ang), mp.sin(ang)
    r = mp.sqrt(lam - 1)
    b = mp.mpf(7) / (72 * (lam - 1))
    third = mp.mpf(1) / 3
    d11 = c ** (third / 2) * zeta ** (-third / 3) * lam ** (-third / 2) * co
    d22 = c ** (-third / 2) * zeta ** (third / 3) * lam ** (third / 2) * co
    d12 = c ** (-third / 2) * zeta ** (-2 * third / 3) / r * lam ** (third / 2) * si
    d21 = c ** (third / 2) * zeta ** (2 * third / 3) * r * lam ** (-third / 2) * si
    return b, d11, d12, d21, d22


def airy_variable(zeta, lam):
    """``(3/2)^(2/3) (1 - |lambda|) zeta^(2/9) |lambda|^(-2/3)``."""
    zeta, lam = mp.mpf(zeta), mp.mpf(lam)
    return mp.cbrt(mp.mpf(9) / 4) * (1 - lam) * zeta ** (mp.mpf(2) / 9) * lam ** (-mp.mpf(2) / 3)


def edge_context(n, x, p, side="right", zeta=None, angle="printed"):
    x = _check_interior(x)
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    zeta = 2 * mp.mpf(n) ** 2 * p.tt if zeta is None else mp.mpf(zeta)
    s = mp.acos(mp.sqrt(x))
    ab = p.a + p.b
    ctx = EdgeAsymptoticsContext(
        side=side,
        n=n,
        x=x,
        zeta=zeta,
        s=s,
        arg=2 * n * s if side == "right" else n * (mp.pi - 2 * s),
        theta1=(ab + 1) * s,
        theta2=(ab - 1) * s,
        theta3=(ab + 1) * s - ab * mp.pi / 2,
        theta4=(ab - 1) * s - ab * mp.pi / 2,
    )
    if zeta > 0:
        lam = zeta ** (-mp.mpf(2) / 3) * ctx.arg ** 2
        ctx.lambda_abs = lam
        ctx.xi = airy_variable(zeta, lam)
        if lam > 1:
            order = p.b if side == "right" else p.a
            ctx.b, ctx.d11, ctx.d12, ctx.d21, ctx.d22 = airy_constants(zeta, lam, order, angle)
    return ctx


def _edge_prefactor(ctx, p, two):
    w = 2 if two else 1
    lw = log_weight(ctx.x, p)
    return (
        mp.sqrt(mp.pi)
        * mp.sqrt(ctx.arg)
        * mp.mpf(2) ** (-(2 * ctx.n + p.a + p.b))
        / mp.root(ctx.x * (1 - ctx.x), 4)
        * mp.exp(-lw / 2)
        / mp.sqrt(w)
    )


def _check_bessel_regime(ctx, cap):
    if not 0 < ctx.arg <= cap:
        raise RegimeViolation(f"Bessel argument {mp.nstr(ctx.arg, 6)} outside (0, {cap}]")


def bessel_edge1_asymptotic(n, x, p, cap=BESSEL_ARG_CAP):
    """Bessel-regime leading term of ``pi_n(x)`` near ``x = 1`` (order beta)."""
    ctx = edge_context(n, x, p, "right")
    _check_bessel_regime(ctx, cap)
    j, dj = bessel_j_and_prime(p.b, ctx.arg)
    damp = mp.exp(-ctx.zeta / ctx.arg ** 2)
    bracket = mp.cos(ctx.theta1) * j + mp.sin(ctx.theta1) * dj
    return _edge_prefactor(ctx, p, two=True) * damp * bracket


def bessel_edge0_asymptotic(n, x, p, cap=BESSEL_ARG_CAP, printed=False):
    """Bessel-regime leading term near ``x = 0`` (order alpha).

    The default includes the factor ``(-1)^n`` required by
    ``pi_n(x; alpha, beta) = (-1)^n pi_n(1 - x; beta, alpha)``;
    ``printed=True`` drops it.
    """
    ctx = edge_context(n, x, p, "left")
    _check_bessel_regime(ctx, cap)
    j, dj = bessel_j_and_prime(p.a, ctx.arg)
    damp = mp.exp(-ctx.zeta / ctx.arg ** 2)
    bracket = mp.sin(ctx.theta3) * j + mp.cos(ctx.theta3) * dj
    sign = 1 if printed or n % 2 == 0 else -1
    return sign * _edge_prefactor(ctx, p, two=True) * damp * bracket


def _check_airy_regime(ctx):
    if ctx.lambda_abs is None or not ctx.lambda_abs > 1:
        lam = None if ctx.lambda_abs is None else mp.nstr(ctx.lambda_abs, 6)
        raise RegimeViolation(f"Airy predictor needs |lambda| > 1 and zeta > 0, got {lam}")


def airy_edge1_asymptotic(n, x, p, zeta=None, angle="printed"):
    """Airy-regime leading term of ``pi_n(x)`` near ``x = 1``.

    See :func:`airy_constants` for ``angle``.
    """
    ctx = edge_context(n, x, p, "right", zeta, angle)
    _check_airy_regime(ctx)
    ai, aip = airy_ai_and_prime(ctx.xi)
    c, s, A = mp.cos(ctx.theta1), mp.sin(ctx.theta1), ctx.arg
    bracket = (c * ctx.d11 + s * (ctx.d21 - ctx.b * ctx.d11) / A) * ai + (
        c * ctx.d12 - s * (ctx.d22 + ctx.b * ctx.d12) / A
    ) * aip
    return _edge_prefactor(ctx, p, two=False) * bracket


def airy_edge0_asymptotic(n, x, p, zeta=None, variant="mirror", angle="printed"):
    """Airy-regime leading term of ``pi_n(x)`` near ``x = 0``.

    ``variant="mirror"`` is the right-edge formula carried over by
    ``x -> 1 - x``, ``alpha <-> beta`` (with its ``(-1)^n``).
    ``variant="printed"`` follows the other arrangement in circulation: the
    ``Ai'`` coefficient reuses ``d11``, ``b`` enters with the opposite sign,
    the prefactor carries ``sqrt(2 w)`` and there is no ``(-1)^n``.
    """
    ctx = edge_context(n, x, p, "left", zeta, angle)
    _check_airy_regime(ctx)
    ai, aip = airy_ai_and_prime(ctx.xi)
    sn, cs, A = mp.sin(ctx.theta3), mp.cos(ctx.theta3), ctx.arg
    if variant == "mirror":
        bracket = (sn * ctx.d11 + cs * (ctx.d21 - ctx.b * ctx.d11) / A) * ai + (
            sn * ctx.d12 - cs * (ctx.d22 + ctx.b * ctx.d12) / A
        ) * aip
        sign = 1 if n % 2 == 0 else -1
        return sign * _edge_prefactor(ctx, p, two=False) * bracket
    if variant == "printed":
        bracket = (sn * ctx.d11 + cs * (ctx.b * ctx.d11 + ctx.d21) / A) * ai + (
            sn * ctx.d11 + cs * (ctx.b * ctx.d12 - ctx.d22) / A
        ) * aip
        return _edge_prefactor(ctx, p, two=True) * bracket
    raise ValueError(f"unknown variant {variant!r}")
