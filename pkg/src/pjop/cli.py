"""Experiment harness: ``pjop <config-file> [--out DIR] [--bits B] [--force-rebuild]``.

A config file holds ``key = value`` lines; ``#`` starts a comment and lists
are comma separated.  Keys:

    alpha, beta, t       weight parameters (required)
    experiment           one of EXPERIMENTS (required)
    n                    list of degrees, strictly increasing
    N                    single degree, used when ``n`` is absent
    bits                 working precision (default 256)
    quad_points          Gauss points per panel (default: chosen from N)
    quad_ratio           panel grading ratio (default 0.25)
    points               evaluation points, meaning depends on the experiment
    u, v                 kernel grid axes; the grid is their product
    a                    bulk centre for ``sine`` (default 0.5)
    side                 ``left`` or ``right`` for edge kernels (default right)
    zeta                 override ``2 n^2 t`` for ``soft-edge``
    angle                ``printed`` or ``full`` for the Airy predictors
    variant              ``mirror`` or ``printed`` for ``airy-edge0``
    out                  output directory (``--out`` wins)

``points`` holds: complex ``z`` off [0, 1] for ``outer``; ``x`` in (0, 1) for
``bulk`` and ``density``; the Bessel argument ``2n arccos sqrt x`` (or its
mirror) for the Bessel edges; ``|lambda|`` for the Airy edges; pairs
``x:y`` for ``kernel-invariants``.
"""

import argparse
import hashlib
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import mpmath as mp

from . import asym, cdkernel, opseq, unikernels
from .errors import DomainError, ParseError
from .mpquad import PrecisionConfig, auto_rule
from .weight import WeightParams

EXPERIMENTS = (
    "recurrence",
    "outer",
    "bulk",
    "bessel-edge0",
    "bessel-edge1",
    "airy-edge0",
    "airy-edge1",
    "density",
    "sine",
    "hard-edge",
    "soft-edge",
    "kernel-invariants",
)

CSV_HEADER = "experiment,alpha,beta,t,n,point1,point2,exact,predicted,abs_err,rel_err"
CSV_DIGITS = 20

# leading error term of each comparison, copied into summary.txt
ERROR_ORDER = {
    "recurrence": "exact (t = 0 oracle); O(t) otherwise",
    "outer": "O(1/n)",
    "bulk": "O(1/n)",
    "bessel-edge0": "O(1/n) + O(zeta)",
    "bessel-edge1": "O(1/n) + O(zeta)",
    "airy-edge0": "O(1/n)",
    "airy-edge1": "O(1/n)",
    "density": "O(1/n)",
    "sine": "O(1/n)",
    "hard-edge": "O(1/n) + O(zeta)",
    "soft-edge": "O(1/n^2) + o(1) as zeta grows",
    "kernel-invariants": "exact up to quadrature",
}

_GRID_EXPERIMENTS = ("sine", "hard-edge", "soft-edge")
_POINT_EXPERIMENTS = (
    "outer", "bulk", "density", "bessel-edge0", "bessel-edge1",
    "airy-edge0", "airy-edge1", "kernel-invariants",
)
_EDGE_EXPERIMENTS = ("bessel-edge0", "bessel-edge1", "airy-edge0", "airy-edge1")
_KEYS = {
    "alpha", "beta", "t", "experiment", "n", "N", "bits", "quad_points", "quad_ratio",
    "points", "u", "v", "a", "side", "zeta", "angle", "variant", "out",
}


@dataclass
class ExperimentConfig:
    params: WeightParams
    experiment: str
    n_list: list
    precision: PrecisionConfig = field(default_factory=PrecisionConfig)
    quad_points: int = None
    quad_ratio: str = "0.25"
    points: list = field(default_factory=list)
    grid: list = field(default_factory=list)
    a: str = "0.5"
    side: str = "right"
    zeta: str = None
    angle: str = "printed"
    variant: str = "mirror"
    out: str = "."

    @property
    def N(self):
        return max(self.n_list)

    def table_key(self):
        p = self.params
        spec = f"{p.alpha}|{p.beta}|{p.t}|{self.N}|{self.precision.bits}|{self.quad_points}|{self.quad_ratio}"
        return hashlib.sha256(spec.encode()).hexdigest()[:16]

    def table_name(self):
        return f"pjop-N{self.N}-b{self.precision.bits}-{self.table_key()}.rct"


# -- parsing ------------------------------------------------------------------


def _split_list(value):
    return [s.strip() for s in value.split(",") if s.strip()]


def _int(value, key, lineno):
    try:
        return int(value)
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}", lineno) from None


def _real(value, key, lineno):
    try:
        mp.mpf(value)
    except (ValueError, TypeError):
        raise ParseError(f"{key} must be a real number, got {value!r}", lineno) from None
    return value


def _complex(value, lineno):
    value = value.replace(" ", "").replace("i", "j")
    try:
        mp.mpmathify(value)
    except (ValueError, TypeError):
        raise ParseError(f"not a complex number: {value!r}", lineno) from None
    return value


def parse_config(text):
    """Parse config text into an :class:`ExperimentConfig`.

    Raises ParseError (with a line number where one applies) for syntax
    problems, unknown or duplicate keys and missing required keys, and the
    weight module's RangeError for invalid parameters.
    """
    raw, where = {}, {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in raw:
            raise ParseError(f"duplicate key {key!r}", lineno)
        if not value:
            raise ParseError(f"empty value for {key!r}", lineno)
        raw[key], where[key] = value, lineno

    for key in ("alpha", "beta", "t", "experiment"):
        if key not in raw:
            raise ParseError(f"missing required key {key!r}")
    exp = raw["experiment"]
    if exp not in EXPERIMENTS:
        raise ParseError(f"unknown experiment {exp!r}", where["experiment"])

    for key in ("alpha", "beta", "t"):
        _real(raw[key], key, where[key])
    params = WeightParams(raw["alpha"], raw["beta"], raw["t"])

    if "n" in raw:
        n_list = [_int(s, "n", where["n"]) for s in _split_list(raw["n"])]
    elif "N" in raw:
        n_list = [_int(raw["N"], "N", where["N"])]
    else:
        raise ParseError("missing degree: give 'n' (list) or 'N'")
    if not n_list:
        raise ParseError("degree list is empty", where.get("n"))
    if any(n < 1 for n in n_list):
        raise ParseError("degrees must be positive", where.get("n", where.get("N")))
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ParseError("degree list must be strictly increasing", where["n"])

    cfg = ExperimentConfig(params=params, experiment=exp, n_list=n_list)
    if "bits" in raw:
        cfg.precision = PrecisionConfig(_int(raw["bits"], "bits", where["bits"]))
    if "quad_points" in raw:
        cfg.quad_points = _int(raw["quad_points"], "quad_points", where["quad_points"])
    for key in ("quad_ratio", "a", "zeta"):
        if key in raw:
            setattr(cfg, key, _real(raw[key], key, where[key]))
    for key, allowed in (("side", ("left", "right")), ("angle", asym.AIRY_ANGLES),
                         ("variant", ("mirror", "printed"))):
        if key in raw:
            if raw[key] not in allowed:
                raise ParseError(f"{key} must be one of {allowed}, got {raw[key]!r}", where[key])
            setattr(cfg, key, raw[key])
    if "out" in raw:
        cfg.out = raw["out"]

    if "points" in raw:
        ln = where["points"]
        items = _split_list(raw["points"])
        if exp == "outer":
            cfg.points = [_complex(s, ln) for s in items]
        elif exp == "kernel-invariants":
            pairs = []
            for s in items:
                xy = s.split(":")
                if len(xy) != 2:
                    raise ParseError(f"kernel-invariants points are 'x:y' pairs, got {s!r}", ln)
                pairs.append(tuple(_real(c.strip(), "points", ln) for c in xy))
            cfg.points = pairs
        else:
            cfg.points = [_real(s, "points", ln) for s in items]
    if "u" in raw or "v" in raw:
        us = [_real(s, "u", where.get("u")) for s in _split_list(raw.get("u", ""))]
        vs = [_real(s, "v", where.get("v")) for s in _split_list(raw.get("v", ""))]
        cfg.grid = [(u, v) for u in us for v in vs]

    if exp in _GRID_EXPERIMENTS and not cfg.grid:
        raise ParseError(f"experiment {exp!r} needs a nonempty u/v grid")
    if exp in _POINT_EXPERIMENTS and exp != "kernel-invariants" and not cfg.points:
        raise ParseError(f"experiment {exp!r} needs nonempty 'points'")
    return cfg


# -- formatting ---------------------------------------------------------------


def format_number(x, digits=CSV_DIGITS):
    """Scientific notation with ``digits`` significant digits, e.g. ``1.2...e+00``."""
    x = mp.mpf(x)
    if not mp.isfinite(x):
        return str(x)
    if x == 0:
        return "0." + "0" * (digits - 1) + "e+00"
    s = mp.nstr(x, digits, min_fixed=mp.inf, max_fixed=-mp.inf, strip_zeros=False)
    mant, _, exp = s.partition("e")
    e = int(exp) if exp else 0
    return f"{mant}e{e:+03d}"


# -- experiments --------------------------------------------------------------


def _rows_recurrence(cfg, tab, rule):
    p = cfg.params
    ja, jb = opseq.jacobi_shifted_coefficients(p.alpha, p.beta, tab.N, cfg.precision)
    for n in range(tab.N + 1):
        yield n, (0, 0), tab.a[n], ja[n]
        yield n, (1, 0), tab.b[n], jb[n]


def _rows_outer(cfg, tab, rule):
    for n in cfg.n_list:
        for z in cfg.points:
            z = mp.mpc(mp.mpmathify(z))
            ratio = opseq.eval_monic(tab, n, z).value / asym.outer_asymptotic(n, z, cfg.params)
            # complex ratio: stored as |ratio - 1| against 1
            yield n, (z.real, z.imag), 1 + abs(ratio - 1), 1


def _rows_bulk(cfg, tab, rule):
    p = cfg.params
    for n in cfg.n_list:
        for x in cfg.points:
            x = mp.mpf(x)
            amp = asym.bulk_amplitude(n, x, p)
            exact = opseq.eval_monic(tab, n, x).value / amp
            yield n, (x, 0), exact, mp.cos(asym.bulk_phase(n, x, p))


def _edge_x(n, arg, side):
    s = arg / (2 * n)
    if not 0 < s < mp.pi / 2:
        raise DomainError(f"scaled point {mp.nstr(arg, 8)} does not map into (0, 1) at n={n}")
    return mp.cos(s) ** 2 if side == "right" else mp.sin(s) ** 2


def _rows_bessel(side):
    def rows(cfg, tab, rule):
        pred = asym.bessel_edge1_asymptotic if side == "right" else asym.bessel_edge0_asymptotic
        for n in cfg.n_list:
            for A in cfg.points:
                x = _edge_x(n, mp.mpf(A), side)
                yield n, (A, x), opseq.eval_monic(tab, n, x).value, pred(n, x, cfg.params)
    return rows


def _rows_airy(side):
    def rows(cfg, tab, rule):
        p = cfg.params
        for n in cfg.n_list:
            zeta = 2 * mp.mpf(n) ** 2 * p.tt
            for lam in cfg.points:
                x = _edge_x(n, mp.sqrt(mp.mpf(lam)) * mp.cbrt(zeta), side)
                if side == "right":
                    pr = asym.airy_edge1_asymptotic(n, x, p, angle=cfg.angle)
                else:
                    pr = asym.airy_edge0_asymptotic(n, x, p, variant=cfg.variant, angle=cfg.angle)
                yield n, (lam, x), opseq.eval_monic(tab, n, x).value, pr
    return rows


def _rows_density(cfg, tab, rule):
    for n in cfg.n_list:
        for y in cfg.points:
            y = mp.mpf(y)
            val = cdkernel.kernel_diagonal(tab, n, y) / n / cdkernel.density(y)
            yield n, (y, 0), val, 1


def _rows_report(make):
    def rows(cfg, tab, rule):
        for n in cfg.n_list:
            for r in make(cfg, tab, n).rows:
                yield n, r.point, r.measured, r.target
    return rows


def _rows_invariants(cfg, tab, rule):
    for n in cfg.n_list:
        yield n, (0, 0), cdkernel.kernel_trace(tab, n, rule), n
        for x, y in cfg.points:
            k = cdkernel.kernel(tab, n, x, y)
            yield n, (x, y), k + cdkernel.projection_residual(tab, n, x, y, rule), k


_RUNNERS = {
    "recurrence": _rows_recurrence,
    "outer": _rows_outer,
    "bulk": _rows_bulk,
    "bessel-edge0": _rows_bessel("left"),
    "bessel-edge1": _rows_bessel("right"),
    "airy-edge0": _rows_airy("left"),
    "airy-edge1": _rows_airy("right"),
    "density": _rows_density,
    "sine": _rows_report(lambda c, tab, n: unikernels.compare_bulk(tab, n, c.a, c.grid)),
    "hard-edge": _rows_report(lambda c, tab, n: unikernels.compare_hard_edge(tab, n, c.side, c.grid)),
    "soft-edge": _rows_report(
        lambda c, tab, n: unikernels.compare_soft_edge(tab, n, c.side, c.grid, zeta=c.zeta)
    ),
    "kernel-invariants": _rows_invariants,
}


# -- tables and outputs -------------------------------------------------------


def cache_dir(out):
    env = os.environ.get("PJOP_CACHE")
    return Path(env) if env else Path(out) / "tables"


def _rule_kw(cfg):
    kw = {"r": mp.mpf(cfg.quad_ratio)}
    if cfg.quad_points is not None:
        kw["m"] = cfg.quad_points
    return kw


def load_or_build_table(cfg, out, force=False):
    """Return ``(table, path, created)``; the table is always the one read from disk."""
    path = cache_dir(out) / cfg.table_name()
    created = False
    if force or not path.exists():
        with cfg.precision.context():
            tab, _ = opseq.build_table(cfg.params, cfg.N, cfg.precision, **_rule_kw(cfg))
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".rct.part")
        opseq.write_table(tab, tmp)
        os.replace(tmp, path)
        created = True
    # reading back keeps fresh and cached runs byte-identical
    return opseq.read_table(path), path, created


def _decay_lines(cfg, rows):
    """Per point, the error at each degree and the ratio to the previous degree."""
    by_point = {}
    for n, pt, err in rows:
        # edge experiments move x with n; group on the scaled variable only
        key = pt[:1] if cfg.experiment in _EDGE_EXPERIMENTS else pt
        by_point.setdefault(key, []).append((n, err))
    lines = []
    for pt, seq in by_point.items():
        label = ",".join(format_number(c) for c in pt)
        parts = [f"n={n} err={mp.nstr(e, 6)}" for n, e in seq]
        ratios = [
            f"{mp.nstr(e1 / e0, 4)}" if e0 != 0 else "nan"
            for (_, e0), (_, e1) in zip(seq, seq[1:])
        ]
        lines.append(f"  ({label}): " + "; ".join(parts))
        if ratios:
            lines.append(f"    decay ratios: {', '.join(ratios)}")
    return lines


def run(cfg, out=None, force_rebuild=False):
    """Run one experiment and write its CSV and ``summary.txt`` under ``out``.

    Returns the list of written paths.  On error, CSV and summary files from
    this run are removed before the exception propagates.
    """
    out = Path(out if out is not None else cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"{cfg.experiment}.csv"
    summary_path = out / "summary.txt"
    written = []
    try:
        tab, tab_path, created = load_or_build_table(cfg, out, force_rebuild)
        rule = None
        if cfg.experiment == "kernel-invariants":
            rule = auto_rule(cfg.params, cfg.N, cfg.precision, **_rule_kw(cfg))
        p = cfg.params
        lines = [CSV_HEADER]
        errs, abss, rels = [], [], []
        with cfg.precision.context():
            for n, pt, exact, pred in _RUNNERS[cfg.experiment](cfg, tab, rule):
                err = abs(exact - pred)
                # monic values near an edge are ~4**-n, so no floor there
                if cfg.experiment in _EDGE_EXPERIMENTS:
                    rel = err / abs(pred) if pred != 0 else mp.inf
                else:
                    rel = err / max(abs(pred), unikernels.REL_FLOOR)
                pt = tuple(mp.mpf(c) for c in pt)
                fields = [cfg.experiment, p.alpha, p.beta, p.t, str(n)]
                fields += [format_number(v) for v in (*pt, exact, pred, err, rel)]
                lines.append(",".join(str(f) for f in fields))
                errs.append((n, pt, rel if cfg.experiment in _EDGE_EXPERIMENTS else err))
                abss.append(err)
                rels.append(rel)
        written.append(csv_path)
        csv_path.write_text("\n".join(lines) + "\n")

        summary = [
            f"experiment: {cfg.experiment}",
            f"params: alpha={p.alpha} beta={p.beta} t={p.t}",
            f"degrees: {', '.join(map(str, cfg.n_list))}",
            f"bits: {cfg.precision.bits}",
            f"table: {tab_path.name} ({'built' if created else 'cached'})",
            f"expected error order: {ERROR_ORDER[cfg.experiment]}",
            f"max abs error: {mp.nstr(max(abss), 6)}",
            f"max rel error: {mp.nstr(max(rels), 6)}",
        ]
        if cfg.experiment != "recurrence":
            measure = "relative" if cfg.experiment in _EDGE_EXPERIMENTS else "absolute"
            summary.append(f"{measure} errors by point:")
            with cfg.precision.context():
                summary += _decay_lines(cfg, errs)
        written.append(summary_path)
        summary_path.write_text("\n".join(summary) + "\n")
    except BaseException:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def main(argv=None):
    ap = argparse.ArgumentParser(prog="pjop", description="Run a pjop verification experiment.")
    ap.add_argument("config", help="experiment config file")
    ap.add_argument("--out", help="output directory (overrides 'out' in the config)")
    ap.add_argument("--bits", type=int, help="working precision in bits")
    ap.add_argument("--force-rebuild", action="store_true", help="ignore a cached recurrence table")
    args = ap.parse_args(argv)
    try:
        text = Path(args.config).read_text()
        cfg = parse_config(text)
        if args.bits is not None:
            cfg.precision = PrecisionConfig(args.bits)
        paths = run(cfg, args.out, args.force_rebuild)
    except (OSError, ValueError) as exc:
        print(f"pjop: error: {exc}", file=sys.stderr)
        return 1
    for path in paths:
        print(path)
    return 0
