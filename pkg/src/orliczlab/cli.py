"""Command-line front end.

Every command writes CSV (to ``--out`` or stdout) after one ``#`` header line
holding the tool version, the full configuration and the seed. Exit codes:
0 success, 2 bad input, 3 numeric failure, 4 threshold unreachable in the
L¹ regime, 5 Unknown verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from typing import Optional

import numpy as np

from . import __version__
from .completeness import (
    AgnewPlan,
    Regime,
    Status,
    agnew_error_norm,
    agnew_threshold,
    completeness_verdict,
    construct_annihilator,
    least_multiple,
    regime_of,
)
from .density import Dyadic, Existence, bm_classify, bm_lower_bound, discrete_translates_verdict
from .descriptors import describe, parse_function, parse_orlicz, parse_set
from .errors import DescriptorError, InvalidPlan, OrliczLabError, WrongRegime
from .norms import holder_check, luxemburg_norm, orlicz_norm_amemiya
from .orlicz import GridSpec, check_delta2, conjugate, limit_ratio_at_zero
from .piecewise import PiecewiseFunction

EXIT_OK, EXIT_PARSE, EXIT_NUMERIC, EXIT_UNREACHABLE, EXIT_UNKNOWN = 0, 2, 3, 4, 5


class UsageError(Exception):
    pass


def fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def parse_grid(text: str) -> GridSpec:
    """``start:stop:num`` (linear) or ``start:stop:per_decade:log``."""
    parts = text.split(":")
    try:
        if len(parts) == 3:
            return GridSpec(float(parts[0]), float(parts[1]), int(parts[2]))
        if len(parts) == 4 and parts[3] == "log":
            return GridSpec(float(parts[0]), float(parts[1]), spacing="log", per_decade=int(parts[2]))
    except (ValueError, OrliczLabError) as exc:
        raise UsageError(f"bad grid {text!r}: {exc}") from None
    raise UsageError(f"bad grid {text!r}; use start:stop:num or start:stop:per_decade:log")


def parse_tols(items, allowed: dict) -> dict:
    out = dict(allowed)
    for item in items or ():
        key, sep, val = item.partition("=")
        if not sep or key not in allowed:
            raise UsageError(f"unknown tolerance {item!r}; this command accepts {sorted(allowed)}")
        try:
            out[key] = type(allowed[key])(float(val)) if isinstance(allowed[key], int) else float(val)
        except ValueError:
            raise UsageError(f"tolerance {key} needs a number, got {val!r}") from None
    return out


def parse_float_list(text: str) -> list:
    try:
        return [float(t) for t in text.split(",") if t]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


class Emitter:
    def __init__(self, args, config: dict):
        self.buf = io.StringIO()
        self.writer = csv.writer(self.buf, lineterminator="\n")
        items = " ".join(f"{k}={fmt(v)}" for k, v in config.items())
        self.buf.write(f"# orliczlab {__version__} command={args.command} {items} seed={args.seed}\n")
        self.out = args.out

    def header(self, *cols):
        self.writer.writerow(cols)

    def row(self, *vals):
        self.writer.writerow([fmt(v) for v in vals])

    def flush(self):
        text = self.buf.getvalue()
        if self.out:
            with open(self.out, "w", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def note(msg: str):
    print(msg, file=sys.stderr)


def _piecewise(text: str) -> PiecewiseFunction:
    f = parse_function(text)
    if not isinstance(f, PiecewiseFunction):
        raise UsageError(f"{text!r} is not a compactly supported piecewise function")
    return f


# --------------------------------------------------------------------------
# commands


def cmd_conjugate(args) -> int:
    phi = parse_orlicz(args.phi)
    grid = parse_grid(args.grid) if args.grid else GridSpec(0.0, 4.0, 41)
    tol = parse_tols(args.tol, {"x_points": 200_001})
    y = grid.points()
    if y[0] < 0:
        raise UsageError("conjugate grids live in [0, inf)")
    psi = conjugate(phi, grid, method=args.method, x_points=tol["x_points"])
    psi_vals = psi._eval(y)
    if _is_raising_table(psi):
        resid = _table_biconjugate_residual(phi, psi, y)
    else:
        with np.errstate(invalid="ignore"):
            resid = np.abs(conjugate(psi)._eval(y) - phi._eval(y))
    em = Emitter(args, {"phi": describe(phi), "grid": args.grid or "0:4:41", "method": args.method, **tol})
    em.header("y", "psi", "biconj_residual")
    for yy, pp, rr in zip(y, psi_vals, resid):
        em.row(yy, pp, rr)
    em.flush()
    return EXIT_OK


def _is_raising_table(psi) -> bool:
    return getattr(psi, "kind", None) == "table" and psi.tail == "raise"


def _table_biconjugate_residual(phi, psi, y):
    """|Ψ*(x) − Φ(x)| with x = y, from the tabulated Ψ; nan where the table
    does not pin Ψ* down (x beyond the last slope of Ψ)."""
    from .kernels import legendre_sorted

    k = psi.n_finite
    ys, vs = np.ascontiguousarray(psi._x[:k]), np.ascontiguousarray(psi._v[:k])
    bi, _ = legendre_sorted(ys, vs, np.ascontiguousarray(y))
    last_slope = (vs[-1] - vs[-2]) / (ys[-1] - ys[-2])
    resid = np.abs(bi - phi._eval(y))
    return np.where(y <= last_slope, resid, np.nan)


def cmd_delta2(args) -> int:
    phi = parse_orlicz(args.phi)
    tol = parse_tols(args.tol, {"blowup": 1e6})
    grid = parse_grid(args.grid) if args.grid else GridSpec.default()
    g = check_delta2(phi, grid, blowup=tol["blowup"])
    em = Emitter(args, {"phi": describe(phi), "grid": args.grid or "default", **tol})
    em.header("phi", "limit_ratio_at_zero", "in_delta2", "delta2_constant", "refutation_x", "sup_ratio", "evidence")
    em.row(describe(phi), g.limit_ratio_at_zero, g.in_delta2, g.delta2, g.refutation, g.sup_ratio, g.evidence)
    em.flush()
    return EXIT_OK


def cmd_norm(args) -> int:
    phi = parse_orlicz(args.phi)
    f = _piecewise(args.f)
    tol = parse_tols(args.tol, {"xtol": 1e-10})
    lux = luxemburg_norm(phi, f)
    am = orlicz_norm_amemiya(phi, f, xtol=tol["xtol"]) if args.kind in ("both", "amemiya") else None
    em = Emitter(args, {"phi": describe(phi), "f": describe(f), "kind": args.kind, **tol})
    em.header("f", "luxemburg", "amemiya", "modular_residual")
    em.row(describe(f), lux.value, am.value if am else None, lux.residual)
    em.flush()
    return EXIT_OK


def cmd_holder(args) -> int:
    phi = parse_orlicz(args.phi)
    f, g = _piecewise(args.f), _piecewise(args.g)
    rep = holder_check(phi, f, g)
    em = Emitter(args, {"phi": describe(phi), "f": describe(f), "g": describe(g)})
    em.header("lhs", "rhs", "holds", "norm_f", "norm_g_conjugate")
    em.row(rep.lhs, rep.rhs, rep.holds, rep.norm_f, rep.norm_g_conjugate)
    em.flush()
    return EXIT_OK if rep.holds else EXIT_NUMERIC


def cmd_agnew(args) -> int:
    phi = parse_orlicz(args.phi)
    a, b = args.a, args.b
    m = args.m if args.m is not None else least_multiple(a, b)
    eps = args.eps
    if args.n_list:
        ns = [int(v) for v in parse_float_list(args.n_list)]
    elif eps is None:
        ns = [2 ** k for k in range(1, 21)]
    else:
        ns = []
    if any(n < 1 for n in ns):
        raise UsageError("n values must be positive integers")
    AgnewPlan(a, b, m, 1)  # validates m before any work
    regime = regime_of(phi)
    unreachable = None
    if eps is not None and not ns:
        if regime is Regime.RATIO_POSITIVE:
            unreachable = limit_ratio_at_zero(phi)
            ns = [2 ** k for k in range(1, 21)]
        else:
            ns = [agnew_threshold(phi, eps, 2 * m * b)]
    elif eps is not None and regime is Regime.RATIO_POSITIVE:
        unreachable = limit_ratio_at_zero(phi)
    em = Emitter(args, {"phi": describe(phi), "a": a, "b": b, "m": m, "eps": eps,
                        "n_list": args.n_list or ""})
    em.header("n", "m", "error_norm", "threshold_satisfied")
    met = []
    for n in ns:
        err = agnew_error_norm(phi, AgnewPlan(a, b, m, n))
        ok = None if eps is None else err < eps
        if ok is not None:
            met.append(ok)
        em.row(n, m, err, ok)
    em.flush()
    if regime is Regime.RATIO_POSITIVE:
        note(f"regime RatioPositive: lim Φ(x)/x = {limit_ratio_at_zero(phi):g} > 0, so L^Φ ⊆ L¹ and "
             f"the error norms tend to {m * b / 2:g}·{limit_ratio_at_zero(phi):g}; no n reaches a small epsilon")
        return EXIT_UNREACHABLE
    if eps is not None and not any(met):
        return EXIT_NUMERIC
    return EXIT_OK


def cmd_verdict(args) -> int:
    phi = parse_orlicz(args.phi)
    if args.target == "translates":
        if not args.f:
            raise UsageError("verdict translates needs --f")
        f = parse_function(args.f)
        tol = parse_tols(args.tol, {"grid_step": 0.01, "scan": 50.0, "zero_tol": 1e-10})
        v = completeness_verdict(phi, f, scan_range=(-tol["scan"], tol["scan"]), grid_step=tol["grid_step"],
                                 zero_tol=tol["zero_tol"])
        em = Emitter(args, {"target": "translates", "phi": describe(phi), "f": describe(f), **tol})
        em.header("status", "basis", "regime", "witness", "summary")
        em.row(v.status.value, v.basis.value, v.regime.value,
               v.zero if v.zero is not None else (v.certificate or ""), v.summary())
        em.flush()
        note(v.summary())
        return EXIT_UNKNOWN if v.status is Status.UNKNOWN else EXIT_OK
    if not args.set:
        raise UsageError("verdict discrete needs --set")
    dset = parse_set(args.set)
    parse_tols(args.tol, {})
    v = discrete_translates_verdict(phi, dset)
    em = Emitter(args, {"target": "discrete", "phi": describe(phi), "set": describe(dset)})
    em.header("status", "regime", "density", "basis", "summary")
    em.row(v.status.value, v.regime.value, str(v.density), v.basis, v.summary())
    em.flush()
    note(v.summary())
    return EXIT_UNKNOWN if v.status is Existence.UNKNOWN else EXIT_OK


def cmd_density(args) -> int:
    dset = parse_set(args.set)
    cls = bm_classify(dset)
    em = Emitter(args, {"set": describe(dset), "k_max": args.k_max, "window": args.window})
    em.header("k", "left", "right", "count", "ratio", "tail_bound")
    for k in range(1, args.k_max + 1):
        lo, hi = 2.0 ** k, 2.0 ** (k + 1)
        cnt = dset.count(lo, hi)
        em.row(k, lo, hi, cnt, cnt / (hi - lo), bm_lower_bound(dset, Dyadic(k), args.window))
    em.flush()
    note(f"{cls.kind.value}: {cls} ({cls.basis})")
    return EXIT_OK


def cmd_annihilator(args) -> int:
    f = parse_function(args.f)
    tol = parse_tols(args.tol, {"quad_tol": 1e-8})
    lams = parse_float_list(args.lambdas)
    rep = construct_annihilator(f, beta=args.beta, spectral_margin=args.margin, N=args.N,
                                extra_lambdas=tuple(lams), quad_tol=tol["quad_tol"])
    em = Emitter(args, {"f": describe(f), "beta": args.beta, "margin": args.margin, "N": args.N,
                        "lambdas": args.lambdas, **tol})
    em.header("lambda", "in_lattice", "inner_product_re", "inner_product_im", "h_lambda", "residual")
    for r in rep.rows():
        em.row(*r)
    em.flush()
    note(f"C = {rep.fitted_constant:.12g}, max |<f_n, g>| on lattice = {rep.max_lattice_abs:.3g}, "
         f"max residual = {rep.max_proportionality_residual:.3g}")
    return EXIT_OK


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write CSV here instead of stdout")
    common.add_argument("--tol", action="append", metavar="KEY=VALUE", help="override a numeric default")
    common.add_argument("--seed", type=int, default=0, help="recorded in the header for reproducibility")

    p = argparse.ArgumentParser(prog="orliczlab", description="Orlicz-space completeness experiments")
    p.add_argument("--version", action="version", version=f"orliczlab {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("conjugate", parents=[common], help="complementary function on a grid")
    s.add_argument("--phi", required=True)
    s.add_argument("--grid", help="start:stop:num or start:stop:per_decade:log (default 0:4:41)")
    s.add_argument("--method", choices=("auto", "numeric"), default="auto")
    s.set_defaults(func=cmd_conjugate)

    s = sub.add_parser("delta2", parents=[common], help="sampled Δ₂ test")
    s.add_argument("--phi", required=True)
    s.add_argument("--grid")
    s.set_defaults(func=cmd_delta2)

    s = sub.add_parser("norm", parents=[common], help="Luxemburg and Orlicz norms")
    s.add_argument("--phi", required=True)
    s.add_argument("--f", required=True)
    s.add_argument("--kind", choices=("luxemburg", "amemiya", "both"), default="both")
    s.set_defaults(func=cmd_norm)

    s = sub.add_parser("holder", parents=[common], help="check ∫|fg| ≤ 2‖f‖_Φ‖g‖_Ψ")
    s.add_argument("--phi", required=True)
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.set_defaults(func=cmd_holder)

    s = sub.add_parser("agnew", parents=[common], help="sweep the explicit step approximation")
    s.add_argument("--phi", required=True)
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--n-list", dest="n_list")
    s.add_argument("--eps", type=float)
    s.set_defaults(func=cmd_agnew)

    s = sub.add_parser("verdict", parents=[common], help="completeness / existence verdicts")
    s.add_argument("target", choices=("translates", "discrete"))
    s.add_argument("--phi", required=True)
    s.add_argument("--f")
    s.add_argument("--set")
    s.set_defaults(func=cmd_verdict)

    s = sub.add_parser("density", parents=[common], help="dyadic density counts")
    s.add_argument("--set", required=True)
    s.add_argument("--k-max", dest="k_max", type=int, default=20)
    s.add_argument("--window", type=int, default=1)
    s.set_defaults(func=cmd_density)

    s = sub.add_parser("annihilator", parents=[common], help="g vanishing on βℤ-translates of f")
    s.add_argument("--f", required=True)
    s.add_argument("--beta", type=float, default=1.0)
    s.add_argument("--margin", type=float, default=1.0)
    s.add_argument("--N", type=int, default=5)
    s.add_argument("--lambdas", default="0.5")
    s.set_defaults(func=cmd_annihilator)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DescriptorError, UsageError, InvalidPlan) as exc:
        note(f"orliczlab {args.command}: {exc}")
        return EXIT_PARSE
    except WrongRegime as exc:
        note(f"orliczlab {args.command}: {exc}")
        return EXIT_UNREACHABLE
    except OrliczLabError as exc:
        note(f"orliczlab {args.command}: {type(exc).__name__}: {exc}")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
