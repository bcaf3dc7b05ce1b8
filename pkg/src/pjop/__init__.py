"""Orthogonal polynomials for the weight x^alpha (1-x)^beta exp(-t/(x(1-x))) on [0, 1].

Recurrence coefficients are computed in multiprecision by a discretized
Stieltjes procedure, and the polynomials, their Christoffel-Darboux kernels
and the associated large-degree asymptotics (outer, bulk, Bessel and Airy
edge regimes, sine/Bessel/Airy universality) can be compared numerically.
"""

from .errors import *  # noqa: F401,F403
from .weight import WeightParams, log_weight, sqrt_weight, validate_params, weight
from .mpquad import (
    DEFAULT_PRECISION,
    PrecisionConfig,
    QuadratureRule,
    auto_rule,
    build_rule,
    gauss_legendre,
    integrate,
)
from .opseq import (
    RecurrenceTable,
    build_table,
    eval_monic,
    jacobi_shifted_coefficients,
    read_table,
    stieltjes,
    write_table,
    zeros,
)
from .cdkernel import kernel, kernel_diagonal, kernel_sum
from .specfun import airy_ai, airy_ai_prime, bessel_j, bessel_j_prime
from .unikernels import airy_kernel, bessel_kernel, sine_kernel

__version__ = "0.1.0"
