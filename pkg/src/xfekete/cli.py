"""Command-line driver.

Every subcommand prints one JSON document (CSV for the diameter sweep)
built only from the selector arguments and the seed, so identical
invocations give byte-identical output: floats are serialized with 17
significant digits and keys are sorted.  Validation problems exit 1,
numerical failures exit 2, both with an error JSON on stderr.
"""

import argparse
import math
import sys

import numpy as np

from .asymptotics import d_sequence, zero_sum_check
from .energy import WeightSpec, energy_hessian, v_weight
from .errors import NumericalError, ValidationError, XFeketeError
from .exceptional import (FamilySpec, build_exceptional,
                          leading_coefficient)
from .fekete_opt import default_domain, uniqueness_probe
from .interp import stability_scan
from .roots import check_interlacing, find_zeros

VERSION = "0.1.0"


def _dumps(obj):
    """Deterministic JSON: sorted keys, floats at 17 significant digits."""
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        inner = ",".join(f"{_dumps(str(k))}:{_dumps(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(obj, bool) or isinstance(obj, np.bool_):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x) or math.isinf(x):
            return "null"
        return format(x, ".17g")
    if isinstance(obj, complex):
        return _dumps([obj.real, obj.imag])
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = obj.tolist() if isinstance(obj, np.ndarray) else list(obj)
        return "[" + ",".join(_dumps(v) for v in seq) + "]"
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(payload, spec=None):
    doc = {"version": VERSION}
    if spec is not None:
        doc["spec"] = spec.as_dict()
    doc.update(payload)
    print(_dumps(doc))


def _spec_from(args):
    beta = getattr(args, "beta", None)
    return FamilySpec(args.family, args.m, args.alpha, args.n, beta)


def _pairs(z):
    return [[float(v.real), float(v.imag)] for v in np.asarray(z)]


def cmd_poly(args):
    spec = _spec_from(args)
    built = build_exceptional(spec)
    _emit({"coefficients": built.coeffs,
           "residual": built.residual,
           "leading_coefficient": float(built.coeffs[-1]),
           "leading_expected": leading_coefficient(spec),
           "warnings": list(built.warnings)}, spec)
    return 0


def cmd_zeros(args):
    spec = _spec_from(args)
    zs = find_zeros(spec)
    _emit({"regular": zs.regular,
           "exceptional": _pairs(zs.exceptional),
           "s_zeros": _pairs(zs.s_zeros),
           "certificate": zs.certificate,
           "interlacing": check_interlacing(zs)}, spec)
    return 0


def cmd_energy(args):
    spec = _spec_from(args)
    zs = find_zeros(spec)
    if args.weight == "v":
        w = v_weight(spec, zs)
    else:
        w = WeightSpec(spec=spec, variant="hat")
    if args.nodes is not None:
        nodes = np.atleast_1d(np.loadtxt(args.nodes, dtype=float))
        nodes_used = "file"
    elif args.weight == "hat" and (zs.exceptional.size == 0
                                   or np.max(np.abs(zs.exceptional.imag))
                                   < 1e-12):
        nodes = np.sort(np.concatenate([zs.exceptional.real, zs.regular]))
        nodes_used = "full zero set"
    else:
        nodes = zs.regular
        nodes_used = "regular zeros"
    rep = energy_hessian(nodes, w)
    _emit({"weight": {"variant": w.variant, "shift": w.resolved_shift},
           "nodes": rep.nodes, "nodes_used": nodes_used,
           "logT": rep.logT, "gradient": rep.gradient,
           "hessian": rep.hessian,
           "diag_signs": rep.diag_signs,
           "stationary": rep.stationary,
           "diagonally_dominant": rep.diagonally_dominant,
           "block_dominant": rep.block_dominant,
           "classification": rep.classification}, spec)
    return 0


def cmd_fekete(args):
    spec = _spec_from(args)
    zs = find_zeros(spec)
    w = v_weight(spec, zs)
    domain = default_domain(w, spec.n)
    probe = uniqueness_probe(w, domain, spec.n, trials=args.trials,
                             seed=args.seed)
    clusters = [{"nodes": c["nodes"], "count": c["count"],
                 "logT": c["logT"]} for c in probe["clusters"]]
    if clusters:
        dev = float(np.max(np.abs(clusters[0]["nodes"] - zs.regular)))
    else:
        dev = None
    _emit({"domain": list(domain), "seed": args.seed,
           "trials": probe["trials"], "converged": probe["converged"],
           "failed": probe["failed"], "clusters": clusters,
           "top_cluster_deviation_from_zeros": dev}, spec)
    return 0


def cmd_interp(args):
    spec = _spec_from(args)
    _emit({"stability": stability_scan(spec, grid_size=args.grid)}, spec)
    return 0


def cmd_diameter(args):
    series = d_sequence(args.m, args.alpha,
                        range(args.n_from, args.n_to + 1), c=args.c)
    print("n,d,delta,rate_stat")
    for i, n in enumerate(series.n_values):
        delta = series.deltas[i]
        stat = (abs(delta) * n ** 2 / math.log(n) ** 2
                if np.isfinite(delta) else float("nan"))
        print(f"{n},{series.d[i]:.17g},{delta:.17g},{stat:.17g}")
    if args.summary:
        doc = {"version": VERSION, "m": args.m, "alpha": args.alpha,
               "c": args.c, "rate_stat": series.rate_stat,
               "rows": int(series.n_values.size),
               "skipped": [list(s) for s in series.skipped],
               "ps_ratio_max": series.ps_ratio_max}
        with open(args.summary, "w") as fh:
            fh.write(_dumps(doc) + "\n")
    return 0


def cmd_verify(args):
    spec = _spec_from(args)
    checks = []

    def record(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed),
                       "detail": detail})

    try:
        built = build_exceptional(spec)
        ok = built.residual < 1e-8
        detail = {"residual": built.residual}
        if spec.family == "laguerre1":
            lead = leading_coefficient(spec)
            exact = built.coeffs[-1] == lead
            ok = ok and exact
            detail["leading_exact"] = bool(exact)
        record("construction", ok, detail)
    except NumericalError as exc:
        record("construction", False, str(exc))
    zs = None
    try:
        zs = find_zeros(spec)
        record("zeros", zs.certificate["passed"], zs.certificate)
    except XFeketeError as exc:
        record("zeros", False, str(exc))
    if zs is not None and spec.family == "laguerre1":
        rep = check_interlacing(zs)
        record("interlacing", rep["passed"], {"mode": rep["mode"]})
        if spec.m >= 1 and spec.n >= 1:
            full = np.sort(np.concatenate([zs.exceptional.real,
                                           zs.regular]))
            er = energy_hessian(full, WeightSpec(spec=spec, variant="hat"))
            record("saddle", er.classification == "saddle",
                   {"classification": er.classification,
                    "max_gradient": float(np.max(np.abs(er.gradient)))})
        zr = zero_sum_check(spec)
        record("zero_sum", zr.abs_err < 1e-6 * max(1.0, abs(zr.rhs)),
               {"lhs": zr.lhs, "rhs": zr.rhs, "abs_err": zr.abs_err})
        if spec.n >= 2:
            scan = stability_scan(spec, zero_set=zs)
            record("stability", scan["passed"],
                   {"max": scan["max"], "min": scan["min"]})
    if zs is not None and spec.n >= 1:
        er = energy_hessian(zs.regular, v_weight(spec, zs))
        record("fekete_stationary", er.stationary,
               {"max_gradient": float(np.max(np.abs(er.gradient))),
                "diag_all_negative": bool(np.all(er.diag_signs < 0))})
    passed = all(c["passed"] for c in checks)
    _emit({"checks": checks, "passed": passed}, spec)
    return 0 if passed else 2


def _add_selectors(p, need_n=True):
    p.add_argument("--family", required=True,
                   choices=["laguerre1", "laguerre2", "jacobi"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=None)
    if need_n:
        p.add_argument("--n", type=int, required=True)


def build_parser():
    ap = argparse.ArgumentParser(
        prog="xfekete",
        description="Exceptional-polynomial zeros, weighted log-energy "
                    "and stability reports")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("poly", help="monomial coefficients of a member")
    _add_selectors(p)
    p.set_defaults(fn=cmd_poly)

    p = sub.add_parser("zeros", help="regular and exceptional zeros")
    _add_selectors(p)
    p.set_defaults(fn=cmd_zeros)

    p = sub.add_parser("energy", help="gradient/Hessian report at nodes")
    _add_selectors(p)
    p.add_argument("--weight", choices=["hat", "v"], default="hat")
    p.add_argument("--at", choices=["zeros"], default="zeros")
    p.add_argument("--nodes", default=None,
                   help="file with one node per line (overrides --at)")
    p.set_defaults(fn=cmd_energy)

    p = sub.add_parser("fekete", help="multistart energy maximization")
    _add_selectors(p)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_fekete)

    p = sub.add_parser("interp", help="Gruenwald stability scan")
    _add_selectors(p)
    p.add_argument("--grid", type=int, default=1000)
    p.set_defaults(fn=cmd_interp)

    p = sub.add_parser("diameter", help="transfinite-diameter sweep (CSV)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--n-from", type=int, required=True)
    p.add_argument("--n-to", type=int, required=True)
    p.add_argument("--c", type=float, default=1.0)
    p.add_argument("--summary", default=None,
                   help="write a JSON summary to this path")
    p.set_defaults(fn=cmd_diameter)

    p = sub.add_parser("verify", help="acceptance bundle for one spec")
    _add_selectors(p)
    p.set_defaults(fn=cmd_verify)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ValidationError as exc:
        sys.stderr.write(_dumps({"error": type(exc).__name__,
                                 "message": str(exc)}) + "\n")
        return 1
    except XFeketeError as exc:
        sys.stderr.write(_dumps({"error": type(exc).__name__,
                                 "message": str(exc)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
