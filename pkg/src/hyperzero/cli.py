"""Command line entry point.

Every command prints one JSON document on stdout carrying a "status"
field; the same status is encoded in the exit code (ok 0, input-error 2,
resource-error 3, numeric-error 4, theorem-violation 5, refusal 6).
Tabular commands write CSV to --out and a short JSON summary to stdout.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from . import dynamics, fptas, hypergraph, partition, regions, weitz, zeros
from .errors import HyperzeroError, InputError
from .poly import Polynomial
from .sphere import INF


# -- serialisation ------------------------------------------------------------------


def jsonable(obj):
    """Exact rationals as "p/q", complex as {re, im}, the point at infinity as "inf"."""
    if obj is INF:
        return "inf"
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isfinite(x):
            return x
        return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": jsonable(obj.real), "im": jsonable(obj.imag)}
    if isinstance(obj, Polynomial):
        return [jsonable(c) for c in obj.coeffs]
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    raise TypeError("cannot serialise %r" % (obj,))


def emit(payload: dict, status: str = "ok") -> None:
    doc = {"status": status}
    doc.update(jsonable(payload))
    sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")


def write_csv(path: str, header: list[str], rows) -> int:
    count = 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(x)) if isinstance(x, (float, np.floating)) else x for x in row])
            count += 1
    return count


# -- argument types -----------------------------------------------------------------


def parse_number(text: str):
    """A Fraction when the text is a real rational or decimal, else a complex float."""
    s = text.strip().replace(" ", "")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return complex(s.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError("not a number: %r" % text) from None


def parse_complex(text: str) -> complex:
    return complex(parse_number(text))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError("%s: %s" % (self.prog, message))


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("HYPERZERO_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError("HYPERZERO_THREADS must be an integer") from None
    return 1


# -- commands -----------------------------------------------------------------------


def cmd_classify(args):
    H = hypergraph.load(args.file)
    emit(hypergraph.classify(H).to_dict())


def cmd_zpoly(args):
    H = hypergraph.load(args.file)
    emit({"coeffs": partition.z_poly(H)})


def _vertex(H, v):
    if not 0 <= v < H.n:
        raise InputError("vertex %d out of range for n=%d" % (v, H.n))
    return v


def cmd_ratio(args):
    H = hypergraph.load(args.file)
    v = _vertex(H, args.vertex)
    lam = args.lam
    if isinstance(lam, Fraction):
        value = partition.ratio_exact(H, v, lam)
    else:
        value = partition.ratio(H, v, lam)
    emit({"vertex": v, "lambda": lam, "ratio": value})


def cmd_weitz(args):
    H = hypergraph.load(args.file)
    T = weitz.build_weitz(H, _vertex(H, args.vertex))
    if args.prune:
        T = weitz.prune_unit_edges(T)
    data = T.to_json()
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, sort_keys=True)
            fh.write("\n")
        emit({"vertices": T.tree.n, "edges": len(T.tree.edges), "out": args.out})
    else:
        emit({"tree": data})


def cmd_verify_divisibility(args):
    H = hypergraph.load(args.file)
    q = weitz.verify_divisibility(H, _vertex(H, args.vertex), prune=args.prune)
    emit({"vertex": args.vertex, "remainder_zero": True, "quotient": q})


def cmd_radii(args):
    if args.delta < 2:
        raise InputError("delta must be at least 2")
    emit({"delta": args.delta, "lambda_s": regions.lambda_s(args.delta),
          "lambda_c": regions.lambda_c(args.delta) if args.delta >= 3 else None})


def _region(args):
    kind = args.kind
    if kind == "A":
        return regions.RegionA(args.x, args.x0, args.eps)
    if kind == "B":
        return regions.LensB(args.y, args.y0, args.eps)
    if kind == "disk":
        return regions.Disk(args.center, args.radius)
    if kind == "cone":
        return regions.Cone(args.x, args.eps)
    raise InputError("unknown region kind %r" % kind)


def cmd_certify_region(args):
    region = _region(args)
    m = args.samples
    checks = {}
    if args.kind == "A":
        checks["log_convexity"] = regions.check_log_convexity(region, m)
        checks["semigroup"] = regions.check_semigroup(regions.MuImage(region), m)
    elif args.kind == "cone":
        checks["log_convexity"] = regions.check_log_convexity(region, m)
    else:
        checks["semigroup"] = regions.check_semigroup(region, m)
    if args.lam is not None:
        params = dynamics.DynParams(args.b, args.d, complex(args.lam))
        checks["forward_invariance"] = regions.check_forward_invariance(region, params, m)
    margin = min(c.margin for c in checks.values())
    emit({"kind": args.kind, "pass": all(c.passed for c in checks.values()), "margin": margin,
          "checks": {k: v.to_dict() for k, v in checks.items()}})


def cmd_certify_disk(args):
    rng = np.random.default_rng(args.seed)
    emit(dynamics.disk_invariance_check(args.delta, args.samples, rng).to_dict())


def cmd_rho(args):
    r = dynamics.rho(args.b, args.d)
    emit({"b": args.b, "d": args.d, "rho": r.rho, "w": r.w, "lambda": r.lam,
          "asymptotic": dynamics.rho_asymptotic(args.b, args.d)})


def cmd_indifferent_curve(args):
    if args.steps < 1:
        raise InputError("steps must be positive")
    thetas = [2 * math.pi * k / args.steps for k in range(args.steps)]
    pts = dynamics.indifferent_curve(args.b, args.d, thetas)
    rows = [(p.theta, p.w.real, p.w.imag, p.lam.real, p.lam.imag) for p in pts]
    if args.out:
        n = write_csv(args.out, ["theta", "re_w", "im_w", "re_lambda", "im_lambda"], rows)
        emit({"rows": n, "out": args.out})
    else:
        emit({"points": [{"theta": p.theta, "branch": p.branch, "w": p.w, "lambda": p.lam} for p in pts]})


def cmd_orbit(args):
    p = dynamics.DynParams(args.b, args.d, complex(args.lam))
    orb = dynamics.orbit_from_lambda(p, args.steps)
    emit({"orbit": list(orb.points), "minus_one_hits": list(orb.minus_one_hits)})


def cmd_tree_zeros(args):
    depths = range(args.min_depth, args.depth + 1)
    rows = zeros.accumulation_experiment(args.b, args.d, args.target, depths,
                                         method=args.method, threads=_threads(args))
    table = [(r.m, r.degree, r.min_dist) for r in rows]
    if args.out:
        write_csv(args.out, ["m", "degree", "min_dist"], table)
        emit({"rows": len(table), "out": args.out})
    else:
        emit({"rows": [{"m": m, "degree": g, "min_dist": x} for m, g, x in table]})


def cmd_approx(args):
    H = hypergraph.load(args.file)
    res = fptas.approx_z(H, complex(args.lam), args.eps, max_order=args.max_order)
    out = res.to_dict()
    out["regime"] = res.regime
    emit(out)


def cmd_b_curves(args):
    lam = float(args.lam)
    best = regions.b_curve_minimum(args.d, lam)
    out = {"d": args.d, "lambda": lam, "t_min": best.t_min, "min": best.value}
    if args.t is not None:
        out["t"] = args.t
        out["value"] = float(regions.b_curve(args.d, lam, args.t))
    emit(out)


def cmd_thm12(args):
    emit(regions.large_degree_inequalities(args.d).to_dict())


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomised checks (default 0)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker cap (default: $HYPERZERO_THREADS or 1)")

    parser = _Parser(prog="hyperzero", description="Zeros of hypergraph independence polynomials.",
                     parents=[common])
    sub = parser.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True
    fmt = argparse.ArgumentDefaultsHelpFormatter

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text, description=help_text, parents=[common],
                           formatter_class=fmt)
        p.set_defaults(func=func)
        return p

    p = add("classify", cmd_classify, "Degree, linearity, hypertree test, uniformity, components.")
    p.add_argument("file")
    p = add("zpoly", cmd_zpoly, "Exact independence polynomial coefficients, lowest degree first.")
    p.add_argument("file")
    p = add("ratio", cmd_ratio, "Occupation ratio Z_in/Z_out at a vertex for a uniform fugacity.")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=parse_number, required=True,
                   help="rational (exact) or complex such as 0.1+0.2i")
    p = add("weitz", cmd_weitz, "Build the rooted hypertree whose root ratio equals the vertex ratio.")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--prune", action="store_true", help="drop unit edges and their vertices")
    p.add_argument("--out", default=None, help="write the tree JSON here")
    p = add("verify-divisibility", cmd_verify_divisibility,
            "Exact quotient Z(T)/Z(H); exit 5 if the remainder is non-zero.")
    p.add_argument("file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--prune", action="store_true")
    p = add("radii", cmd_radii, "Exact lambda_s(delta) and lambda_c(delta).")
    p.add_argument("--delta", type=int, required=True)
    p = add("certify-region", cmd_certify_region,
            "Sampled log-convexity, semigroup and forward-invariance checks for a region.")
    p.add_argument("--kind", choices=["A", "B", "disk", "cone"], default="A")
    p.add_argument("--x", type=float, default=-1 / 3, help="vertex of A or of the cone")
    p.add_argument("--x0", type=float, default=2.0)
    p.add_argument("--y", type=float, default=-0.5, help="left end of the lens")
    p.add_argument("--y0", type=float, default=0.5)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--center", type=parse_complex, default=0j)
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--lambda", dest="lam", type=parse_complex, default=None)
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--samples", type=int, default=4096)
    p = add("certify-disk", cmd_certify_disk,
            "Random test that F maps the disk of radius 1/delta into itself at |lambda| = lambda_s(delta).")
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--samples", type=int, default=10000)
    p = add("rho", cmd_rho, "Radius of the largest zero-free disk for the tree family (b, d).")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p = add("indifferent-curve", cmd_indifferent_curve,
            "Parameters with an indifferent fixed point, one row per (branch, theta).")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--steps", type=int, default=720)
    p.add_argument("--out", default=None, help="CSV: theta, re_w, im_w, re_lambda, im_lambda")
    p = add("orbit", cmd_orbit, "The orbit lambda, f(lambda), f(f(lambda)), ...")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    p.add_argument("--steps", type=int, default=50)
    p = add("tree-zeros", cmd_tree_zeros, "Distance from a target to the nearest zero of Z(T_m) per depth.")
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--min-depth", type=int, default=1)
    p.add_argument("--target", type=parse_complex, required=True)
    p.add_argument("--method", choices=["winding", "roots"], default="winding")
    p.add_argument("--out", default=None, help="CSV: m, degree, min_dist")
    p = add("approx", cmd_approx, "Truncated log-series approximation of Z(H; lambda).")
    p.add_argument("file")
    p.add_argument("--lambda", dest="lam", type=parse_complex, required=True)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--max-order", type=int, default=fptas.DEFAULT_MAX_ORDER)
    p = add("b-curves", cmd_b_curves, "Minimum over [0,1] of the closed-form curve B_d(lambda; t).")
    p.add_argument("--d", type=int, choices=[2, 3], required=True)
    p.add_argument("--lambda", dest="lam", type=parse_number, required=True)
    p.add_argument("--t", type=float, default=None, help="also evaluate at this t")
    p = add("thm12", cmd_thm12, "Exact closing inequalities for large degree and their crossing point.")
    p.add_argument("--d", type=int, required=True)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
        return 0
    except HyperzeroError as exc:
        payload = {"message": str(exc)}
        payload.update(exc.details)
        try:
            emit(payload, exc.status)
        except TypeError:
            emit({"message": str(exc)}, exc.status)
        return exc.exit_code


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
