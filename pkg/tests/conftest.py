import functools

import mpmath as mp
import pytest

from pjop import WeightParams, build_table
from pjop.mpquad import auto_rule


@pytest.fixture(autouse=True)
def _precision():
    with mp.workprec(256):
        yield


@functools.lru_cache(maxsize=None)
def table(alpha, beta, t, N):
    with mp.workprec(256):
        return build_table(WeightParams(alpha, beta, t), N)


@functools.lru_cache(maxsize=None)
def rule_for(alpha, beta, t, N, m=None):
    with mp.workprec(256):
        return auto_rule(WeightParams(alpha, beta, t), N, m=m)


def close(a, b, tol):
    return abs(a - b) <= tol * max(1, abs(b))
