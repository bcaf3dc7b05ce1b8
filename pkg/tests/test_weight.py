import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pjop import WeightParams, log_weight, validate_params, weight
from pjop.errors import DomainError, NegativeT, NonPositiveExponent, PjopError, RangeError
from pjop.weight import sqrt_weight

exps = st.floats(min_value=0.05, max_value=6)
ts = st.floats(min_value=0, max_value=2)
xs = st.floats(min_value=1e-4, max_value=1 - 1e-4)


def test_valid_params():
    p = validate_params(1, 1, 0.5)
    assert (p.alpha, p.beta, p.t) == (1, 1, 0.5)


@pytest.mark.parametrize(
    "args, exc",
    [((0, 1, 0.1), NonPositiveExponent), ((1, -2, 0.1), NonPositiveExponent), ((1, 1, -0.1), NegativeT)],
)
def test_invalid_params(args, exc):
    with pytest.raises(exc):
        WeightParams(*args)
    assert issubclass(exc, RangeError) and issubclass(exc, PjopError)


def test_log_weight_values():
    assert log_weight(0.5, WeightParams(1, 1, 1)) == mp.log(mp.mpf("0.25")) - 4
    assert log_weight(0.5, WeightParams(1, 1, 0)) == mp.log(mp.mpf("0.25"))
    x = mp.mpf("0.9")
    want = 2 * mp.log(x) + 3 * mp.log(1 - x) - mp.mpf("0.2") / (x * (1 - x))
    assert abs(log_weight("0.9", WeightParams(2, 3, "0.2")) - want) < mp.mpf(10) ** -70


@pytest.mark.parametrize("x", [0, 1, -0.1, 1.5])
def test_log_weight_domain(x):
    with pytest.raises(DomainError):
        log_weight(x, WeightParams(1, 1, 0))


def test_weight_values():
    assert weight(0.5, WeightParams(1, 1, 0)) == mp.mpf("0.25")
    assert weight(0, WeightParams(1, 1, 0.3)) == 0
    assert weight(1, WeightParams(1, 1, 0.3)) == 0
    x = mp.mpf("0.25")
    want = x * (1 - x) ** 2 * mp.exp(-mp.mpf("0.1") / (x * (1 - x)))
    assert abs(weight(x, WeightParams(1, 2, "0.1")) - want) < mp.mpf(10) ** -70


def test_weight_survives_double_underflow():
    # e^(-1/x) at x = 1e-3 is ~1e-434, below double range
    w = weight(mp.mpf("1e-3"), WeightParams(1, 1, 1))
    assert 0 < w < mp.mpf(10) ** -400
    assert abs(sqrt_weight("1e-3", WeightParams(1, 1, 1)) ** 2 / w - 1) < mp.mpf(10) ** -70


@settings(max_examples=60, deadline=None)
@given(x=xs, a=exps, b=exps, t=ts)
def test_swap_symmetry(x, a, b, t):
    p = WeightParams(a, b, t)
    assert mp.almosteq(weight(x, p), weight(1 - mp.mpf(x), p.swap()), rel_eps=mp.mpf(10) ** -60)


@settings(max_examples=60, deadline=None)
@given(x=xs, a=exps, b=exps, t1=ts, t2=ts)
def test_monotone_in_t(x, a, b, t1, t2):
    lo, hi = sorted((t1, t2))
    assert weight(x, WeightParams(a, b, lo)) >= weight(x, WeightParams(a, b, hi)) > 0


@settings(max_examples=40, deadline=None)
@given(x=st.floats(min_value=1e-6, max_value=1 - 1e-6), a=exps, b=exps, t=ts)
def test_exp_log_consistency(x, a, b, t):
    p = WeightParams(a, b, t)
    w = weight(x, p)
    assert abs(mp.exp(log_weight(x, p)) - w) <= w * mp.mpf(10) ** -70
