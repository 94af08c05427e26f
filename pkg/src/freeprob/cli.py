"""
Command-line interface.

Exit status: 0 on success, 1 when a verification fails (or a computation
cannot be completed), 2 on usage errors.
"""

import argparse
import json
import sys

import numpy as np

from . import measures as M
from .config import ConfigError, RunConfig, config_from_env, load_config
from .cumulants import (
    cond_psd_check,
    cumulants_by_series_reversion,
    free_convolve_moments,
    moments_to_free_cumulants,
)
from .exceptions import ConvergenceError, PoleError
from .fidcheck import CurveSpec, _curve_grid, _curve_poles, run_full_check
from .sequences import (
    FreeCumulantSequence,
    MomentSequence,
    format_rational,
    read_sequence_file,
    write_sequence_file,
)
from .transforms import (
    ConeSpec,
    EvalMethod,
    cauchy_transform,
    char_function_meixner,
    default_cone,
    f_inverse_numeric,
    f_of,
    voiculescu_phi,
)

__all__ = ["main", "parse_and_dispatch", "parse_complex", "RunConfig", "load_config"]

CSV_HEADER = "x,re_G,im_G,re_F,im_F"

# in the moment and cumulant commands these tags name the rescaled laws whose
# moments are the integer/rational tables (Euler numbers, Bernoulli-type values)
RESCALED_TAGS = {
    "secant": "rescaled_secant",
    "euler": "rescaled_secant",
    "rescaled_secant": "rescaled_secant",
    "logistic": "rescaled_logistic",
    "rescaled_logistic": "rescaled_logistic",
}


class UsageError(Exception):
    pass


def parse_complex(text):
    """Parse ``1+2i``, ``-0.3i``, ``2``, ``1-1j`` and similar."""
    s = text.strip().replace(" ", "").replace("I", "i").replace("i", "j")
    if s in ("j", "+j", "-j"):
        s = s.replace("j", "1j")
    s = s.replace("+j", "+1j").replace("-j", "-1j")
    try:
        return complex(s)
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def _measure(tag):
    try:
        return M.parse_measure(tag)
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit_value(args, value, err):
    value = complex(value)
    if args.json:
        print(json.dumps({"re": value.real, "im": value.imag, "err": float(err)}))
    else:
        print(f"{value.real:.17g},{value.imag:.17g},{float(err):.17g}")


def _method(args):
    return EvalMethod(args.method) if args.method else None


def _tol(args, cfg):
    if args.tol is not None:
        return args.tol
    if args.method == EvalMethod.RESIDUE_SERIES.value:
        return cfg["series.tol"]
    return cfg["quadrature.tol"]


def _cone(args, mu):
    cone = default_cone(mu)
    return ConeSpec(args.alpha if args.alpha is not None else cone.alpha,
                    args.M if args.M is not None else cone.M)


# ----------------------------------------------------------- commands

def cmd_eval_g(args, cfg):
    mu = _measure(args.measure)
    kw = {}
    if args.method == EvalMethod.RESIDUE_SERIES.value and mu.is_meixner:
        kw["max_terms"] = cfg["series.max_terms"]
    val, err = cauchy_transform(mu, parse_complex(args.z), method=_method(args),
                                tol=_tol(args, cfg), full_output=True, **kw)
    _emit_value(args, val, err)
    return 0


def cmd_eval_f(args, cfg):
    mu = _measure(args.measure)
    val, err = f_of(mu, parse_complex(args.z), method=_method(args), tol=_tol(args, cfg),
                    full_output=True)
    _emit_value(args, val, err)
    return 0


def _inverse(args, cfg):
    mu = _measure(args.measure)
    z = parse_complex(args.z)
    cone = _cone(args, mu)
    w = f_inverse_numeric(mu, z, cone, method=_method(args), max_iter=cfg["newton.max_iter"])
    resid = abs(complex(f_of(mu, w, method=_method(args))) - z)
    return mu, z, cone, w, resid


def cmd_invert_f(args, cfg):
    _, _, _, w, resid = _inverse(args, cfg)
    _emit_value(args, w, resid)
    return 0


def cmd_phi(args, cfg):
    mu = _measure(args.measure)
    z = parse_complex(args.z)
    cone = _cone(args, mu)
    val = voiculescu_phi(mu, z, cone, method=_method(args), max_iter=cfg["newton.max_iter"])
    resid = abs(complex(f_of(mu, val + z, method=_method(args))) - z)
    _emit_value(args, val, resid)
    return 0


def cmd_charfn(args, cfg):
    mu = _measure(args.measure)
    if not mu.is_meixner:
        raise UsageError("charfn is available for Meixner laws (meixner:t=..., secant)")
    val, err = char_function_meixner(mu.extra["t"], args.s, tol=cfg["quadrature.tol"],
                                      full_output=True)
    _emit_value(args, val, err)
    return 0


def _moments_for(args, order):
    if args.file:
        m = read_sequence_file(args.file, MomentSequence)
        if order is not None:
            if order > m.order:
                raise UsageError(f"{args.file} holds {m.order} moments, {order} requested")
            m = m.truncate(order)
        return m
    if not args.measure:
        raise UsageError("give a measure tag or --file")
    if order is None:
        raise UsageError("--order is required with a measure tag")
    key = args.measure.strip().lower()
    try:
        if key in RESCALED_TAGS:
            return M.reference_moments(RESCALED_TAGS[key], order)
        return _measure(args.measure).moments(order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit_sequence(args, seq):
    if args.output:
        write_sequence_file(seq, args.output)
    if args.json:
        print(json.dumps([format_rational(v) for v in seq.values]))
    elif not args.output:
        print(" ".join(format_rational(v) for v in seq.values))


def cmd_moments(args, cfg):
    _emit_sequence(args, _moments_for(args, args.order))
    return 0


def _cumulants(args, order):
    m = _moments_for(args, order)
    if args.method == "reversion":
        return cumulants_by_series_reversion(m)
    return moments_to_free_cumulants(m)


def cmd_cumulants(args, cfg):
    _emit_sequence(args, _cumulants(args, args.order))
    return 0


def cmd_psd_check(args, cfg):
    N = args.order
    if args.cumulant_file:
        r = read_sequence_file(args.cumulant_file, FreeCumulantSequence)
    else:
        r = _cumulants(args, 2 * N)
    rel_tol = args.rel_tol if args.rel_tol is not None else cfg["psd.rel_tol"]
    try:
        res = cond_psd_check(r, N, rel_tol=rel_tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json:
        print(json.dumps({"passed": res.passed, "min_eigenvalue": res.min_eigenvalue,
                          "norm": res.norm, "size": N, "rel_tol": rel_tol}))
    else:
        print(f"{'pass' if res.passed else 'fail'} size={N} min_eigenvalue={res.min_eigenvalue:.17g} "
              f"norm={res.norm:.17g}")
    return 0 if res.passed else 1


def cmd_freeconv(args, cfg):
    a = read_sequence_file(args.file1, MomentSequence)
    b = read_sequence_file(args.file2, MomentSequence)
    n = min(a.order, b.order)
    _emit_sequence(args, free_convolve_moments(a.truncate(n), b.truncate(n)))
    return 0


def _default_depth(mu):
    if mu.is_meixner:
        return float(mu.extra["t"])
    if mu.tag == "logistic":
        return 0.5
    raise UsageError(f"no default depth for {mu.name}; pass --depth")


def _curve(args, cfg, mu):
    depth = args.depth if args.depth is not None else _default_depth(mu)
    xmax = args.xmax if args.xmax is not None else cfg["grid.xmax"]
    try:
        return CurveSpec(depth, xmax, args.exclusion)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check_fid(args, cfg):
    mu = _measure(args.measure)
    curve = _curve(args, cfg, mu)
    values = dict(cfg.values)
    if args.points is not None:
        values["grid.points"] = args.points
    if args.radius is not None:
        values["contour.radius"] = args.radius
    run_cfg = RunConfig(values, source=cfg.source)
    report = run_full_check(mu, curve, run_cfg, method=_method(args))
    if args.table:
        for sub in (report.condition_B, report.condition_D, report.condition_E):
            print(f"{sub.name}: {'pass' if sub.passed else 'fail'} margin={sub.margin:.6g}")
        print(f"overall: {'pass' if report.overall else 'fail'}")
    else:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return 0 if report.overall else 1


def cmd_scan_curve(args, cfg):
    mu = _measure(args.measure)
    curve = _curve(args, cfg, mu)
    n = args.points if args.points is not None else cfg["grid.points"]
    xs = _curve_grid(curve, n, _curve_poles(mu, curve.depth, curve.x_max))
    z = xs - 1j * curve.depth
    g = np.asarray(cauchy_transform(mu, z, method=_method(args), tol=cfg["quadrature.tol"]))
    with np.errstate(divide="ignore", invalid="ignore"):
        f = 1.0 / g
    lines = [CSV_HEADER]
    for x, gv, fv in zip(xs, g, f):
        lines.append(",".join(f"{v:.16e}" for v in (x, gv.real, gv.imag, fv.real, fv.imag)))
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_verify_all(args, cfg):
    from .verify import run_all

    results = run_all()
    if args.json:
        print(json.dumps([r.to_dict() for r in results], indent=2, default=str))
    else:
        for r in results:
            print(r.line())
        n_ok = sum(r.passed for r in results)
        print(f"{n_ok}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


# ------------------------------------------------------------- parser

def build_parser():
    p = argparse.ArgumentParser(prog="freeprob", description="Free-probability transforms and checks.")
    p.add_argument("--config", help="key = value config file (default: $FREEPROB_CONFIG)")
    sub = p.add_subparsers(dest="command", required=True)

    out = argparse.ArgumentParser(add_help=False)
    out.add_argument("--json", action="store_true", help="emit JSON")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("measure", help="measure tag, e.g. meixner:t=0.3, logistic, semicircle")
    point.add_argument("--z", required=True, help="complex point such as 1+0.5i")
    point.add_argument("--method", choices=[m.value for m in EvalMethod])
    point.add_argument("--tol", type=float)

    cone = argparse.ArgumentParser(add_help=False)
    cone.add_argument("--alpha", type=float, help="cone aperture")
    cone.add_argument("--M", type=float, help="cone height floor")

    s = sub.add_parser("eval-g", parents=[point, out], help="Cauchy transform G(z)")
    s.set_defaults(func=cmd_eval_g)
    s = sub.add_parser("eval-f", parents=[point, out], help="reciprocal transform F(z) = 1/G(z)")
    s.set_defaults(func=cmd_eval_f)
    s = sub.add_parser("invert-f", parents=[point, cone, out], help="F^{-1}(z) by Newton iteration")
    s.set_defaults(func=cmd_invert_f)
    s = sub.add_parser("phi", parents=[point, cone, out], help="Voiculescu transform F^{-1}(z) - z")
    s.set_defaults(func=cmd_phi)

    s = sub.add_parser("charfn", parents=[out], help="characteristic function of a Meixner law")
    s.add_argument("measure")
    s.add_argument("--s", type=float, required=True, help="real frequency")
    s.set_defaults(func=cmd_charfn)

    seq_src = argparse.ArgumentParser(add_help=False)
    seq_src.add_argument("measure", nargs="?",
                         help="measure tag; secant and logistic mean the rescaled integer-moment laws")
    seq_src.add_argument("--file", help="moment file, one rational per line")
    seq_src.add_argument("--output", help="write the result as a sequence file")

    s = sub.add_parser("moments", parents=[seq_src, out], help="exact moments")
    s.add_argument("--order", type=int)
    s.set_defaults(func=cmd_moments)
    s = sub.add_parser("cumulants", parents=[seq_src, out], help="exact free cumulants")
    s.add_argument("--order", type=int)
    s.add_argument("--method", choices=["recursion", "reversion"], default="recursion")
    s.set_defaults(func=cmd_cumulants)
    s = sub.add_parser("psd-check", parents=[seq_src, out],
                       help="conditional nonnegative definiteness of (r_{i+j})")
    s.add_argument("--order", type=int, required=True, help="matrix size N (needs 2N cumulants)")
    s.add_argument("--cumulant-file", help="free cumulant file instead of moments")
    s.add_argument("--rel-tol", type=float)
    s.add_argument("--method", choices=["recursion", "reversion"], default="recursion")
    s.set_defaults(func=cmd_psd_check)

    s = sub.add_parser("freeconv", parents=[out], help="moments of the free convolution")
    s.add_argument("file1")
    s.add_argument("file2")
    s.add_argument("--output")
    s.set_defaults(func=cmd_freeconv)

    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("measure")
    curve.add_argument("--depth", type=float, help="curve x - depth*i (default: t, or 1/2)")
    curve.add_argument("--xmax", type=float)
    curve.add_argument("--points", type=int, help="abscissae per side")
    curve.add_argument("--exclusion", type=float, default=1e-3, help="radius around poles on the curve")
    curve.add_argument("--method", choices=[m.value for m in EvalMethod])

    s = sub.add_parser("check-fid", parents=[curve], help="conditions B, D, E as a JSON report")
    s.add_argument("--radius", type=float, help="winding contour radius")
    s.add_argument("--json", action="store_true", help="JSON report (the default)")
    s.add_argument("--table", action="store_true", help="short human-readable summary instead")
    s.set_defaults(func=cmd_check_fid)

    s = sub.add_parser("scan-curve", parents=[curve], help="CSV of G and F along the curve")
    s.add_argument("--output")
    s.set_defaults(func=cmd_scan_curve)

    s = sub.add_parser("verify-all", parents=[out], help="run the acceptance suite")
    s.set_defaults(func=cmd_verify_all)
    return p


def _positive(args):
    for name in ("order", "points"):
        v = getattr(args, name, None)
        if v is not None and v <= 0:
            raise UsageError(f"--{name} must be positive")
    for name in ("tol", "xmax", "radius", "rel_tol", "alpha", "M"):
        v = getattr(args, name, None)
        if v is not None and not v > 0:
            raise UsageError(f"--{name.replace('_', '-')} must be positive")


def parse_and_dispatch(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        cfg = load_config(args.config) if args.config else config_from_env()
        _positive(args)
        return args.func(args, cfg)
    except (UsageError, ConfigError, FileNotFoundError) as exc:
        print(f"freeprob: error: {exc}", file=sys.stderr)
        return 2
    except (PoleError, ConvergenceError, ZeroDivisionError, ValueError) as exc:
        print(f"freeprob: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main(argv=None):
    sys.exit(parse_and_dispatch(argv))


if __name__ == "__main__":
    main()
