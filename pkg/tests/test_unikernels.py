import mpmath as mp
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pjop import airy_kernel, bessel_kernel, sine_kernel
from pjop.errors import OrderOutOfRange
from pjop.unikernels import (
    ErrorReport,
    LimitKernelSpec,
    airy_kernel_diagonal,
    bessel_kernel_diagonal,
    compare_bulk,
    compare_hard_edge,
    compare_soft_edge,
)

from conftest import table

TIGHT = mp.mpf(10) ** -60
reals = st.floats(-4, 4)
pos = st.floats(0.05, 30)


def test_sine_values():
    assert sine_kernel(2, 2) == 1
    assert abs(sine_kernel("1.5", "0.5")) < TIGHT
    assert abs(sine_kernel("0.5", 0) - 2 / mp.pi) < TIGHT


@settings(max_examples=40, deadline=None)
@given(u=reals, v=reals, c=reals)
def test_sine_translation_invariant(u, v, c):
    u, v, c = mp.mpf(u), mp.mpf(v), mp.mpf(c)
    assert sine_kernel(u + c, v + c) == sine_kernel(u, v)
    assert sine_kernel(u, v) == sine_kernel(v, u)


def bessel_kernel_oracle(nu, x, y):
    sx, sy = mp.sqrt(x), mp.sqrt(y)
    J = lambda s: mp.besselj(nu, s)  # noqa: E731
    dJ = lambda s: mp.besselj(nu, s, derivative=1)  # noqa: E731
    return (J(sx) * sy * dJ(sy) - J(sy) * sx * dJ(sx)) / (2 * (x - y))


def test_bessel_kernel_values():
    assert abs(bessel_kernel(1, 1, 2) - bessel_kernel_oracle(1, mp.mpf(1), mp.mpf(2))) < TIGHT
    assert abs(bessel_kernel("2.5", 3, 7) - bessel_kernel_oracle(mp.mpf("2.5"), mp.mpf(3), mp.mpf(7))) < TIGHT


@pytest.mark.parametrize("nu", ["0.5", 1, 3])
@pytest.mark.parametrize("x", ["0.5", 2, 11])
def test_bessel_kernel_confluent(nu, x):
    x = mp.mpf(x)
    d = bessel_kernel_diagonal(nu, x)
    h = x * mp.mpf("5e-7")
    near = bessel_kernel(nu, x - h, x + h)
    assert abs(near - d) < mp.mpf("1e-6") * abs(d)
    assert bessel_kernel(nu, x, x) == d
    assert abs(bessel_kernel(nu, x, x + mp.mpf(10) ** -40) - d) < mp.mpf(10) ** -35


def test_bessel_kernel_errors():
    with pytest.raises(OrderOutOfRange):
        bessel_kernel(-1, 1, 2)
    with pytest.raises(ValueError):
        bessel_kernel(1, 0, 2)


def test_airy_kernel_values():
    c = mp.mpf(3) ** (-mp.mpf(1) / 3) / mp.gamma(mp.mpf(1) / 3)
    assert abs(airy_kernel_diagonal(0) - c**2) < TIGHT
    want = (mp.airyai(-1) * mp.airyai(1, 1) - mp.airyai(1) * mp.airyai(-1, 1)) / (-2)
    assert abs(airy_kernel(-1, 1) - want) < TIGHT
    x = mp.mpf("-2.3")
    assert abs(airy_kernel(x, x + mp.mpf(10) ** -50) - airy_kernel_diagonal(x)) < mp.mpf(10) ** -45


@settings(max_examples=30, deadline=None)
@given(x=pos, y=pos)
def test_bessel_kernel_symmetric_nonneg_diagonal(x, y):
    assert abs(bessel_kernel(1, x, y) - bessel_kernel(1, y, x)) < TIGHT
    assert bessel_kernel_diagonal(1, x) > 0


@settings(max_examples=30, deadline=None)
@given(x=reals, y=reals)
def test_airy_kernel_symmetric_nonneg_diagonal(x, y):
    assert abs(airy_kernel(x, y) - airy_kernel(y, x)) < TIGHT
    assert airy_kernel_diagonal(x) > 0


def test_limit_kernel_spec():
    assert LimitKernelSpec("sine")(1, 0) == sine_kernel(1, 0)
    assert LimitKernelSpec("bessel", 2)(1, 3) == bessel_kernel(2, 1, 3)
    assert LimitKernelSpec("airy")(0, 1) == airy_kernel(0, 1)
    with pytest.raises(ValueError):
        LimitKernelSpec("hermite")
    with pytest.raises(OrderOutOfRange):
        LimitKernelSpec("bessel", -2)


def test_error_report():
    rep = ErrorReport()
    rep.add((0, 0), mp.mpf("1.1"), mp.mpf(1))
    rep.add((1, 0), mp.mpf("0.5"), mp.mpf(0))
    assert abs(rep.max_abs - mp.mpf("0.5")) < TIGHT
    assert abs(rep.rows[1].rel_err * mp.mpf("1e-8") / mp.mpf("0.5") - 1) < mp.mpf(10) ** -12
    assert abs(rep.mean_abs - mp.mpf("0.3")) < TIGHT
    assert rep.max_rel == rep.rows[1].rel_err


def test_compare_rejects_empty_grid():
    tab, _ = table(1, 1, 0, 8)
    for call in (
        lambda: compare_bulk(tab, 8, "0.5", []),
        lambda: compare_hard_edge(tab, 8, "right", []),
        lambda: compare_soft_edge(tab, 8, "right", [], zeta=10),
    ):
        with pytest.raises(ValueError):
            call()
    with pytest.raises(ValueError):
        compare_hard_edge(tab, 8, "top", [(1, 1)])


def test_bulk_comparison_diagonal_is_density_check():
    tab, _ = table(1, 1, "1e-4", 32)
    rep = compare_bulk(tab, 32, "0.5", [(0, 0)])
    assert rep.rows[0].target == 1
    assert rep.max_abs < mp.mpf("0.03")


def test_jacobi_hard_edge_pipeline():
    # t = 0 is the classical Jacobi ensemble, whose hard edge is Bessel of order beta
    grid = [(1, 1), (1, 2), (2, 3)]
    errs = []
    for n in (16, 32):
        tab, _ = table(1, 2, 0, n)
        errs.append(compare_hard_edge(tab, n, "right", grid).max_rel)
    # O(1/n) with a sizeable constant: about 9/n for beta = 2
    assert errs[1] < mp.mpf("0.6") * errs[0]
    assert errs[1] < mp.mpf("0.35")
