"""Bessel J and Airy Ai for real arguments, at mpmath working precision.

Both functions use their ascending power series below a crossover and the
classical large-argument expansions above it.  The series is summed with
enough guard bits to absorb its cancellation, so it is accurate at any
argument; the crossover is therefore set where the asymptotic expansion
first reaches the working precision (its best error is about
``exp(-2x)`` for J and ``exp(-4/3 |x|**1.5)`` for Ai).
"""

from dataclasses import dataclass

import mpmath as mp

from .errors import ConvergenceFailure, DomainError, OrderOutOfRange


@dataclass(frozen=True)
class SpecFunConfig:
    series_tol: object = None  # default: 2**-prec
    bessel_crossover: object = None  # default: chosen from precision and order
    airy_crossover: object = None

    def __post_init__(self):
        for name in ("series_tol", "bessel_crossover", "airy_crossover"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive")


DEFAULT_CONFIG = SpecFunConfig()


def _tol(cfg):
    return mp.mp.eps if cfg.series_tol is None else mp.mpf(cfg.series_tol)


def bessel_crossover(nu, cfg=DEFAULT_CONFIG):
    if cfg.bessel_crossover is not None:
        return mp.mpf(cfg.bessel_crossover)
    # e^{-2x} below 2^-prec, and well past the turning point x = nu
    return max(mp.mpf(mp.mp.prec) * mp.ln2 / 2 + 4, 2 * abs(mp.mpf(nu)) ** 2 / 3 + 12)


def airy_crossover(cfg=DEFAULT_CONFIG):
    if cfg.airy_crossover is not None:
        return mp.mpf(cfg.airy_crossover)
    zeta = mp.mpf(mp.mp.prec) * mp.ln2 / 2 + 6
    return (mp.mpf(3) / 2 * zeta) ** (mp.mpf(2) / 3)


# -- Bessel -----------------------------------------------------------------


def _bessel_series(nu, x, cfg):
    """``(J_nu(x), J_nu'(x))`` from the ascending series, ``x > 0``."""
    guard = int(float(x) * 1.4427) + 20
    with mp.extraprec(guard):
        nu = mp.mpf(nu)
        x = mp.mpf(x)
        tol = _tol(cfg) * mp.ldexp(1, -8)
        q = -(x / 2) ** 2
        term = (x / 2) ** nu / mp.gamma(nu + 1)
        s, ds = term, term * nu
        k = 0
        while True:
            k += 1
            term *= q / (k * (nu + k))
            s += term
            ds += term * (nu + 2 * k)
            if k > x and abs(term) <= tol * abs(s) and abs(term * (nu + 2 * k)) <= tol * abs(ds):
                break
            if k > 100000:
                raise ConvergenceFailure("Bessel series did not converge")
        return +s, ds / x


def _bessel_hankel_pq(nu, x, cfg):
    mu = 4 * mp.mpf(nu) ** 2
    tol = _tol(cfg)
    P, Q = mp.mpf(1), mp.mpf(0)
    term = mp.mpf(1)
    prev = mp.inf
    k = 0
    while True:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8 * x)
        if abs(term) >= prev and k > nu:
            break  # expansion started to diverge
        prev = abs(term)
        sign = -1 if (k // 2) % 2 else 1
        if k % 2:
            Q += sign * term
        else:
            P += sign * term
        if abs(term) < tol:
            break
        if k > 10000:
            raise ConvergenceFailure("Hankel expansion did not terminate")
    return P, Q


def _bessel_asym(nu, x, cfg):
    with mp.extraprec(20):
        nu, x = mp.mpf(nu), mp.mpf(x)
        P, Q = _bessel_hankel_pq(nu, x, cfg)
        chi = x - (nu / 2 + mp.mpf(1) / 4) * mp.pi
        return +(mp.sqrt(2 / (mp.pi * x)) * (P * mp.cos(chi) - Q * mp.sin(chi)))


def _bessel_any(nu, x, cfg):
    """J and J' for any real order not a negative integer; ``x > 0``."""
    if x >= bessel_crossover(nu, cfg):
        j = _bessel_asym(nu, x, cfg)
        j1 = _bessel_asym(nu + 1, x, cfg)
        return j, nu * j / x - j1
    return _bessel_series(nu, x, cfg)


def _check_order(nu):
    if not mp.mpf(nu) > -1:
        raise OrderOutOfRange(f"Bessel order must be > -1, got {nu}")


def bessel_j(nu, x, cfg=DEFAULT_CONFIG):
    """Bessel function of the first kind ``J_nu(x)`` for ``nu > -1, x >= 0``."""
    _check_order(nu)
    nu, x = mp.mpf(nu), mp.mpf(x)
    if x < 0:
        raise DomainError(f"bessel_j needs x >= 0, got {x}")
    if x == 0:
        if nu == 0:
            return mp.mpf(1)
        return mp.mpf(0) if nu > 0 else mp.inf
    return _bessel_any(nu, x, cfg)[0]


def bessel_j_prime(nu, x, cfg=DEFAULT_CONFIG):
    """Derivative ``J_nu'(x)``."""
    _check_order(nu)
    nu, x = mp.mpf(nu), mp.mpf(x)
    if x < 0:
        raise DomainError(f"bessel_j_prime needs x >= 0, got {x}")
    if x == 0:
        if nu == 1:
            return mp.mpf(1) / 2
        if nu == 0 or nu > 1:
            return mp.mpf(0)
        return mp.inf
    return _bessel_any(nu, x, cfg)[1]


def bessel_j_and_prime(nu, x, cfg=DEFAULT_CONFIG):
    _check_order(nu)
    nu, x = mp.mpf(nu), mp.mpf(x)
    if x <= 0:
        return bessel_j(nu, x, cfg), bessel_j_prime(nu, x, cfg)
    return _bessel_any(nu, x, cfg)


def bessel_j_general(nu, x, cfg=DEFAULT_CONFIG):
    """``J_nu(x)`` for any real order, including ``nu <= -1``; ``x > 0``."""
    nu, x = mp.mpf(nu), mp.mpf(x)
    if x <= 0:
        raise DomainError("bessel_j_general needs x > 0")
    if nu < 0 and nu == int(nu):
        m = -int(nu)
        return (-1) ** m * _bessel_any(mp.mpf(m), x, cfg)[0]
    return _bessel_any(nu, x, cfg)[0]


def bessel_j_zero(nu, k, cfg=DEFAULT_CONFIG):
    """k-th positive zero of ``J_nu`` by Newton from McMahon's estimate."""
    _check_order(nu)
    if k < 1:
        raise ValueError("k must be >= 1")
    nu = mp.mpf(nu)
    b = (k + nu / 2 - mp.mpf(1) / 4) * mp.pi
    mu = 4 * nu * nu
    x = b - (mu - 1) / (8 * b) - 4 * (mu - 1) * (7 * mu - 31) / (3 * (8 * b) ** 3)
    if k == 1 and nu < 2:
        # McMahon is poor for the first zero of low orders
        x = max(x, mp.mpf(1))
    for _ in range(100):
        j, dj = bessel_j_and_prime(nu, x, cfg)
        dx = j / dj
        x -= dx
        if abs(dx) <= 8 * mp.mp.eps * abs(x):
            return x
    raise ConvergenceFailure(f"Newton failed for zero {k} of J_{nu}")


# -- Airy -------------------------------------------------------------------


def _airy_constants():
    c1 = 1 / (mp.cbrt(9) * mp.gamma(mp.mpf(2) / 3))
    c2 = 1 / (mp.cbrt(3) * mp.gamma(mp.mpf(1) / 3))
    return c1, c2


def _airy_guard(x):
    return int(4 * abs(float(x)) ** 1.5 / 3 * 1.4427) + 20


def _airy_series(x, cfg):
    """Maclaurin data ``(f, g, f', g', f'', g'')`` of the two standard solutions.

    ``f = sum 3^k (1/3)_k x^{3k}/(3k)!``, ``g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!``.
    Call inside ``mp.extraprec(_airy_guard(x))``: for ``x > 0`` the Airy
    combination cancels ``exp(4/3 x^1.5)`` worth of magnitude.
    """
    if True:
        x = mp.mpf(x)
        tol = _tol(cfg) * mp.ldexp(1, -8)
        x3 = x ** 3
        ft, gt = mp.mpf(1), x
        f, g = ft, gt
        fp, gp = mp.mpf(0), mp.mpf(1)
        fpp, gpp = mp.mpf(0), mp.mpf(0)
        k = 0
        while True:
            ft *= x3 / ((3 * k + 2) * (3 * k + 3))
            gt *= x3 / ((3 * k + 3) * (3 * k + 4))
            k += 1
            f += ft
            g += gt
            if x != 0:
                n_f, n_g = 3 * k, 3 * k + 1
                fp += ft * n_f / x
                gp += gt * n_g / x
                fpp += ft * n_f * (n_f - 1) / (x * x)
                gpp += gt * n_g * (n_g - 1) / (x * x)
            if abs(ft) + abs(gt) <= tol * (abs(f) + abs(g)) and k > 2:
                break
            if x == 0:
                break
        return f, g, fp, gp, fpp, gpp


def _airy_u(kmax):
    u = [mp.mpf(1)]
    for k in range(1, kmax + 1):
        # u_k = (6k-5)(6k-3)(6k-1) / ((2k-1) 216 k) u_{k-1}
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    return u


def _airy_asym(x, cfg):
    tol = _tol(cfg)
    with mp.extraprec(20):
        x = mp.mpf(x)
        ax = abs(x)
        zeta = 2 * ax ** mp.mpf(1.5) / 3
        # terms u_k / zeta^k: stop at the smallest or below tol
        kmax = int(2 * zeta) + 2
        u = _airy_u(kmax)
        v = [mp.mpf(1)] + [-(6 * k + 1) * u[k] / (6 * k - 1) for k in range(1, kmax + 1)]
        terms_u, terms_v = [], []
        prev = mp.inf
        for k in range(kmax + 1):
            tu = u[k] / zeta ** k
            tv = v[k] / zeta ** k
            size = abs(tu) + abs(tv)
            if k > 1 and size >= prev:
                break
            prev = size
            terms_u.append(tu)
            terms_v.append(tv)
            if size < tol:
                break
        q = mp.root(ax, 4)
        if x > 0:
            su = mp.fsum((-1) ** k * t for k, t in enumerate(terms_u))
            sv = mp.fsum((-1) ** k * t for k, t in enumerate(terms_v))
            e = mp.exp(-zeta) / (2 * mp.sqrt(mp.pi))
            return +(e * su / q), +(-e * q * sv)
        ue = mp.fsum((-1) ** (k // 2) * t for k, t in enumerate(terms_u) if k % 2 == 0)
        uo = mp.fsum((-1) ** (k // 2) * t for k, t in enumerate(terms_u) if k % 2 == 1)
        ve = mp.fsum((-1) ** (k // 2) * t for k, t in enumerate(terms_v) if k % 2 == 0)
        vo = mp.fsum((-1) ** (k // 2) * t for k, t in enumerate(terms_v) if k % 2 == 1)
        ph = zeta + mp.pi / 4
        s, c = mp.sin(ph), mp.cos(ph)
        ai = (s * ue - c * uo) / (mp.sqrt(mp.pi) * q)
        aip = -q * (c * ve + s * vo) / mp.sqrt(mp.pi)
        return +ai, +aip


def airy_ai_and_prime(x, cfg=DEFAULT_CONFIG):
    x = mp.mpf(x)
    if abs(x) >= airy_crossover(cfg):
        return _airy_asym(x, cfg)
    with mp.extraprec(_airy_guard(x)):
        f, g, fp, gp, _, _ = _airy_series(x, cfg)
        c1, c2 = _airy_constants()
        ai, aip = c1 * f - c2 * g, c1 * fp - c2 * gp
    return +ai, +aip


def airy_ai(x, cfg=DEFAULT_CONFIG):
    """Airy function ``Ai(x)`` for real ``x``."""
    return airy_ai_and_prime(x, cfg)[0]


def airy_ai_prime(x, cfg=DEFAULT_CONFIG):
    return airy_ai_and_prime(x, cfg)[1]


def airy_ai_second(x, cfg=DEFAULT_CONFIG):
    """``Ai''(x)`` by differentiating the Maclaurin series twice."""
    x = mp.mpf(x)
    with mp.extraprec(_airy_guard(x)):
        f, g, _, _, fpp, gpp = _airy_series(x, cfg)
        c1, c2 = _airy_constants()
        v = c1 * fpp - c2 * gpp
    return +v


def airy_bi_and_prime(x, cfg=DEFAULT_CONFIG):
    """``Bi`` and ``Bi'`` from the Maclaurin series only (moderate ``|x|``)."""
    x = mp.mpf(x)
    with mp.extraprec(20):
        f, g, fp, gp, _, _ = _airy_series(x, cfg)
        c1, c2 = _airy_constants()
        s3 = mp.sqrt(3)
        bi, bip = s3 * (c1 * f + c2 * g), s3 * (c1 * fp + c2 * gp)
    return +bi, +bip
