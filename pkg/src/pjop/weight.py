"""The singularly perturbed Pollaczek-Jacobi weight on [0, 1].

    w(x) = x**alpha * (1 - x)**beta * exp(-t / (x * (1 - x)))

The exponential factor underflows IEEE doubles already around x ~ 1e-3 for
t = 1, so everything goes through :func:`log_weight` and is exponentiated in
mpmath at the caller's precision.
"""

from dataclasses import dataclass

import mpmath as mp

from .errors import DomainError, NegativeT, NonPositiveExponent


@dataclass(frozen=True)
class WeightParams:
    """Parameters ``(alpha, beta, t)`` of the weight.

    ``alpha`` is the exponent at the left edge 0, ``beta`` at the right
    edge 1.  ``t = 0`` gives the shifted Jacobi weight.  Values are kept as
    given (floats, ints, strings or mpf); they are converted with ``mp.mpf``
    at use so that decimal inputs such as ``"0.01"`` stay exact to the
    working precision.
    """

    alpha: object
    beta: object
    t: object

    def __post_init__(self):
        if not mp.mpf(self.alpha) > 0 or not mp.mpf(self.beta) > 0:
            raise NonPositiveExponent(
                f"alpha and beta must be > 0, got alpha={self.alpha}, beta={self.beta}"
            )
        if mp.mpf(self.t) < 0:
            raise NegativeT(f"t must be >= 0, got t={self.t}")

    @property
    def a(self):
        return mp.mpf(self.alpha)

    @property
    def b(self):
        return mp.mpf(self.beta)

    @property
    def tt(self):
        return mp.mpf(self.t)

    def swap(self):
        """Exchange the roles of the two edges (``x -> 1 - x``)."""
        return WeightParams(self.beta, self.alpha, self.t)

    def with_t(self, t):
        return WeightParams(self.alpha, self.beta, t)

    def key(self):
        return (str(self.alpha), str(self.beta), str(self.t))


def validate_params(alpha, beta, t):
    return WeightParams(alpha, beta, t)


def log_weight(x, p):
    """``alpha*log(x) + beta*log(1-x) - t/(x(1-x))`` for ``0 < x < 1``."""
    x = mp.mpf(x)
    if not 0 < x < 1:
        raise DomainError(f"log_weight needs 0 < x < 1, got {x}")
    y = 1 - x
    return p.a * mp.log(x) + p.b * mp.log(y) - p.tt / (x * y)


def weight(x, p):
    """Weight value; the endpoints evaluate to their limit 0."""
    x = mp.mpf(x)
    if x < 0 or x > 1:
        raise DomainError(f"weight needs 0 <= x <= 1, got {x}")
    if x == 0 or x == 1:
        return mp.mpf(0)
    return mp.exp(log_weight(x, p))


def sqrt_weight(x, p):
    """``sqrt(w(x))`` computed as ``exp(log_weight/2)``."""
    x = mp.mpf(x)
    if x == 0 or x == 1:
        return mp.mpf(0)
    return mp.exp(log_weight(x, p) / 2)
