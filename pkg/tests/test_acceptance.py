"""Acceptance checks.

Run directly (``python3 tests/test_acceptance.py``) for one PASS/FAIL line
per check plus the measured tables, or through pytest where each check is a
test.  Thresholds are fixed; failures are reported, not tuned away.
"""

import sys
import time
from functools import lru_cache

import mpmath as mp
import pytest

from pjop import WeightParams, build_table, eval_monic, jacobi_shifted_coefficients
from pjop.asym import (
    airy_edge0_asymptotic,
    airy_edge1_asymptotic,
    bessel_edge0_asymptotic,
    bessel_edge1_asymptotic,
    bulk_amplitude,
    bulk_asymptotic,
    bulk_zeros,
    outer_asymptotic,
)
from pjop.cdkernel import (
    bulk_scaled_kernel,
    density,
    edge_scaled_kernel_left,
    edge_scaled_kernel_right,
    kernel_diagonal,
    kernel_trace,
    projection_residual,
)
from pjop.opseq import max_normalized_residual, zeros
from pjop.mpquad import build_rule
from pjop.specfun import (
    airy_ai_and_prime,
    airy_ai_second,
    airy_bi_and_prime,
    bessel_j,
    bessel_j_and_prime,
    bessel_j_general,
)
from pjop.unikernels import airy_kernel, bessel_kernel, compare_soft_edge, sine_kernel

BITS = 256
TABLES = []  # extra lines printed after the verdicts


@lru_cache(maxsize=None)
def tab(alpha, beta, t, N):
    with mp.workprec(BITS):
        return build_table(WeightParams(alpha, beta, t), N)


def fmt(x, d=3):
    return mp.nstr(x, d)


def ratios(seq):
    return [b / a for a, b in zip(seq, seq[1:])]


# -- checks -------------------------------------------------------------------


def check_jacobi_oracle():
    start = time.perf_counter()
    t, _ = tab(1, 1, 0, 40)
    a, b = jacobi_shifted_coefficients(1, 1, 40)
    err = mp.mpf(0)
    for n in range(41):
        # a_n = 1/2 by symmetry; b_n = n(n+2) / (4(2n+1)(2n+3)) for n >= 1
        want = mp.mpf(n * (n + 2)) / (4 * (2 * n + 1) * (2 * n + 3)) if n else b[0]
        err = max(err, abs(t.a[n] * 2 - 1), abs(t.a[n] - a[n]) / a[n])
        err = max(err, abs(t.b[n] - want) / want, abs(t.b[n] - b[n]) / b[n])
    secs = time.perf_counter() - start
    return err <= mp.mpf("1e-20") and secs <= 60, f"max rel err {fmt(err)}, {secs:.1f}s"


def check_orthogonality():
    t, rule = tab("1.5", "2.5", "0.05", 32)
    L, m, r = rule.panel_spec
    refined = max_normalized_residual(t, rule.refined())
    richer = max_normalized_residual(t, build_rule(L, m + m // 2, r))
    worst = max(refined, richer)
    return worst <= mp.mpf("1e-25"), f"2L rule {fmt(refined)}, 1.5m rule {fmt(richer)}"


def check_kernel_invariants():
    t, rule = tab(1, 1, "0.01", 16)
    pairs = [("0.3", "0.6"), ("0.1", "0.9"), ("0.5", "0.5"), ("0.05", "0.45"), ("0.72", "0.81")]
    tr = pr = mp.mpf(0)
    for n in (8, 16):
        tr = max(tr, abs(kernel_trace(t, n, rule) - n))
        for x, y in pairs:
            pr = max(pr, abs(projection_residual(t, n, x, y, rule)))
    return tr <= mp.mpf("1e-10") and pr <= mp.mpf("1e-8"), f"trace err {fmt(tr)}, projection err {fmt(pr)}"


def check_outer():
    p_pts = {"z=2": mp.mpc(2), "z=0.5+0.8i": mp.mpc("0.5", "0.8")}
    ns = (8, 16, 32, 64)
    t, _ = tab(1, 1, "0.01", 64)
    ok, parts = True, []
    for name, z in p_pts.items():
        errs = [abs(eval_monic(t, n, z).value / outer_asymptotic(n, z, t.params) - 1) for n in ns]
        C = max(n * e for n, e in zip(ns, errs))
        rs = ratios(errs)
        ok &= all(r <= mp.mpf("0.6") for r in rs)
        parts.append(f"{name} err {[fmt(e) for e in errs]} C={fmt(C)} ratios {[fmt(r) for r in rs]}")
    # the same predictor with zeta = 2n^2 t held fixed, for contrast
    fixed = []
    for n in (8, 16, 32):
        tt, _ = tab(1, 1, mp.mpf("0.64") / (n * n), n)
        fixed.append(abs(eval_monic(tt, n, 2).value / outer_asymptotic(n, 2, tt.params) - 1))
    TABLES.append(f"  outer at fixed zeta=1.28, z=2: err {[fmt(e) for e in fixed]} ratios {[fmt(r) for r in ratios(fixed)]}")
    return ok, "; ".join(parts)


def _zero_dev(t, n):
    s = lambda x: mp.acos(mp.sqrt(x))  # noqa: E731
    pred = [s(q) for q in bulk_zeros(n, t.params)]
    dev = mp.mpf(0)
    for z in zeros(t, n):
        if mp.mpf("0.1") < z < mp.mpf("0.9"):
            dev = max(dev, min(abs(s(z) - q) for q in pred))
    return dev


def check_bulk():
    t, _ = tab(1, 1, "0.01", 64)
    ns = (16, 32, 64)
    ok, parts = True, []
    for x in ("0.3", "0.5", "0.7"):
        x = mp.mpf(x)
        errs = [abs(eval_monic(t, n, x).value - bulk_asymptotic(n, x, t.params)) / bulk_amplitude(n, x, t.params) for n in ns]
        rs = ratios(errs)
        ok &= all(r <= mp.mpf("0.6") for r in rs)
        parts.append(f"x={fmt(x)} err {[fmt(e) for e in errs]} ratios {[fmt(r) for r in rs]}")
    devs = [_zero_dev(t, n) for n in ns]
    ok &= all(d <= mp.mpf(1) / n for d, n in zip(devs, ns))
    parts.append(f"zero shift in arccos sqrt x {[fmt(d) for d in devs]} (bound 1/n)")
    return ok, "; ".join(parts)


def check_density():
    t, _ = tab(1, 1, "1e-4", 64)
    ns = (16, 32, 64)
    ok, parts = True, []
    for y in ("0.3", "0.5", "0.7"):
        y = mp.mpf(y)
        errs = [abs(kernel_diagonal(t, n, y) / n / density(y) - 1) for n in ns]
        rs = ratios(errs)
        ok &= all(r <= mp.mpf("0.6") for r in rs)
        parts.append(f"y={fmt(y)} err {[fmt(e) for e in errs]} ratios {[fmt(r) for r in rs]}")
    return ok, "; ".join(parts)


def check_sine():
    t, _ = tab(1, 1, "0.001", 64)
    grid = [mp.mpf(k) / 4 for k in range(-6, 7)]
    errs = []
    for n in (32, 64):
        errs.append(max(abs(bulk_scaled_kernel(t, n, "0.5", u, v) - sine_kernel(u, v)) for u in grid for v in grid))
    ok = errs[1] <= mp.mpf("0.7") * errs[0] and errs[1] <= mp.mpf("0.05")
    return ok, f"max err n=32 {fmt(errs[0])}, n=64 {fmt(errs[1])}"


def check_hard_edge():
    pts = [(1, 1), (1, 2), (2, 4)]
    ok, parts = True, []
    for side, scaled in (("right", edge_scaled_kernel_right), ("left", edge_scaled_kernel_left)):
        per_n = []
        for n in (32, 64):
            t, _ = tab(1, 1, mp.mpf(n) ** -3, n)
            per_n.append([abs(scaled(t, n, u, v) / bessel_kernel(1, u, v) - 1) for u, v in pts])
        ok &= all(e <= mp.mpf("0.05") for e in per_n[1])
        ok &= all(b < a for a, b in zip(*per_n))
        parts.append(f"{side} n=32 {[fmt(e) for e in per_n[0]]} n=64 {[fmt(e) for e in per_n[1]]}")
    return ok, "; ".join(parts)


def _bessel_points(n, A, side):
    s = mp.mpf(A) / (2 * n)
    return mp.cos(s) ** 2 if side == "right" else mp.sin(s) ** 2


def check_bessel_edges():
    As = (1, 2, 5, 8, 9)
    ok, parts = True, []
    for side, pred in (("right", bessel_edge1_asymptotic), ("left", bessel_edge0_asymptotic)):
        worst = []
        for n in (24, 48, 96):
            t, _ = tab(1, 1, "1e-8", n)
            errs = []
            for A in As:
                x = _bessel_points(n, A, side)
                errs.append(abs(pred(n, x, t.params) / eval_monic(t, n, x).value - 1))
            worst.append(max(errs))
        ok &= worst[1] <= mp.mpf("0.15") and worst[2] < worst[1] < worst[0]
        parts.append(f"{side} max|ratio-1| n=24,48,96 {[fmt(w) for w in worst]}")
    return ok, "; ".join(parts)


def _airy_points(t, n, zeta, side, lam_lo=mp.mpf("1.5"), lam_hi=mp.mpf(8)):
    """Midpoints (in arccos sqrt x) between consecutive zeros, with |lambda| in range.

    Ratios at the midpoints are well conditioned; right next to a zero they
    are not.
    """
    zs = zeros(t, n)
    s = [mp.acos(mp.sqrt(z)) for z in zs]
    if side == "left":
        s = [mp.pi / 2 - q for q in s]
    s = sorted(s)
    out = []
    for a, b in zip(s, s[1:]):
        m = (a + b) / 2
        lam = (2 * n * m) ** 2 / zeta ** (mp.mpf(2) / 3)
        if lam_lo < lam < lam_hi:
            x = mp.cos(m) ** 2 if side == "right" else mp.sin(m) ** 2
            out.append((lam, x))
    return out


def check_airy_edges():
    n = 64
    lines, worst = [], {}
    for zeta in (25, 100, 400):
        t, _ = tab(1, 1, mp.mpf(zeta) / (2 * n * n), n)
        for side in ("right", "left"):
            pts = _airy_points(t, n, mp.mpf(zeta), side)
            for angle in ("printed", "full"):
                errs = []
                for lam, x in pts:
                    if side == "right":
                        pr = airy_edge1_asymptotic(n, x, t.params, angle=angle)
                    else:
                        pr = airy_edge0_asymptotic(n, x, t.params, angle=angle)
                    errs.append(abs(pr / eval_monic(t, n, x).value - 1))
                worst[(zeta, side, angle)] = max(errs)
                lines.append(
                    f"  zeta={zeta:<4} {side:<5} angle={angle:<7} |lambda| "
                    f"{[fmt(l, 3) for l, _ in pts]} |ratio-1| {[fmt(e, 3) for e in errs]}"
                )
    soft = {}
    grid = [(-1, 0), (0, 0), (0, 1)]
    for zeta in (25, 100, 400):
        t, _ = tab(1, 1, mp.mpf(zeta) / (2 * n * n), n)
        rep = compare_soft_edge(t, n, "right", grid)
        soft[zeta] = [r.abs_err for r in rep.rows]
        lines.append(f"  soft edge zeta={zeta:<4} abs err at {grid}: {[fmt(e) for e in soft[zeta]]}")
    TABLES.append("Airy-edge convergence table (n = 64):")
    TABLES.extend(lines)

    pred_ok = {}
    for side in ("right", "left"):
        for angle in ("printed", "full"):
            a, b = worst[(100, side, angle)], worst[(400, side, angle)]
            pred_ok[(side, angle)] = a <= mp.mpf("0.25") and b <= mp.mpf("0.25") and b < a
    predictor = any(pred_ok.values())
    soft_decay = all(soft[400][i] < soft[100][i] < soft[25][i] for i in range(len(grid)))
    detail = (
        f"predictor max|ratio-1| zeta=100/400 right printed {fmt(worst[(100, 'right', 'printed')])}/"
        f"{fmt(worst[(400, 'right', 'printed')])}, right full {fmt(worst[(100, 'right', 'full')])}/"
        f"{fmt(worst[(400, 'right', 'full')])}; soft-edge error decreasing in zeta: {soft_decay}"
    )
    return predictor and soft_decay, detail


def check_specfun():
    worst_j = worst_a = inv = mp.mpf(0)
    for nu in ("0", "0.5", "1", "2.5", "5", "10"):
        for x in ("0.001", "0.1", "1", "3.7", "12", "25", "60", "92", "93.5", "120", "200"):
            j, dj = bessel_j_and_prime(nu, x)
            worst_j = max(worst_j, abs(j / mp.besselj(nu, x) - 1), abs(dj / mp.besselj(nu, x, derivative=1) - 1))
    for k in range(-30, 31):
        x = mp.mpf(k) / 1 + mp.mpf("0.37")
        ai, aip = airy_ai_and_prime(x)
        worst_a = max(worst_a, abs(ai / mp.airyai(x) - 1), abs(aip / mp.airyai(x, derivative=1) - 1))
    for nu in ("0.5", "1", "2.5"):
        nu = mp.mpf(nu)
        for k in range(1, 41):
            x = mp.mpf(k) / 2
            rhs = 2 * nu / x * bessel_j(nu, x)
            lhs = bessel_j_general(nu - 1, x) + bessel_j(nu + 1, x)
            inv = max(inv, abs(lhs - rhs) / max(abs(rhs), mp.mpf(1e-30)))
    for k in range(-50, 51):
        x = mp.mpf(k) / 10
        inv = max(inv, abs(airy_ai_second(x) - x * airy_ai_and_prime(x)[0]))
    for x in (-2, 0, 2):
        ai, aip = airy_ai_and_prime(x)
        bi, bip = airy_bi_and_prime(x)
        inv = max(inv, abs(ai * bip - aip * bi - 1 / mp.pi))
    ok = worst_j <= mp.mpf("1e-12") and worst_a <= mp.mpf("1e-12") and inv <= mp.mpf("1e-10")
    return ok, f"Bessel rel err {fmt(worst_j)}, Airy rel err {fmt(worst_a)}, invariants {fmt(inv)}"


CHECKS = [
    ("jacobi-oracle", check_jacobi_oracle),
    ("orthogonality", check_orthogonality),
    ("kernel-trace-projection", check_kernel_invariants),
    ("outer-asymptotics", check_outer),
    ("bulk-asymptotics", check_bulk),
    ("density-limit", check_density),
    ("sine-kernel-limit", check_sine),
    ("hard-edge-bessel-kernel", check_hard_edge),
    ("bessel-edge-predictors", check_bessel_edges),
    ("airy-edge-and-soft-edge", check_airy_edges),
    ("special-functions", check_specfun),
]


def _run(check):
    with mp.workprec(BITS):
        return check()


@pytest.mark.parametrize("name, check", CHECKS, ids=[c[0] for c in CHECKS])
def test_acceptance(name, check):
    ok, detail = _run(check)
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    if TABLES:
        print("\n".join(TABLES))
        TABLES.clear()
    assert ok, detail


def main():
    failed = 0
    for name, check in CHECKS:
        ok, detail = _run(check)
        failed += not ok
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}", flush=True)
    if TABLES:
        print()
        print("\n".join(TABLES))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
