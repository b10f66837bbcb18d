"""Distance from a target parameter to the nearest zero of Z(T_m), depth by depth.

    python scripts/accumulation.py --b 1 --d 2 --max-depth 12 --out acc_1_2.csv

Without --target the script picks -lambda_s(d+1) for b = 1 and otherwise the
parabolic parameter with positive imaginary part closest to the real axis.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from dataclasses import dataclass

from hyperzero.dynamics import parabolic_parameters
from hyperzero.regions import lambda_s
from hyperzero.zeros import accumulation_experiment


@dataclass
class AccumulationConfig:
    b: int = 1
    d: int = 2
    min_depth: int = 2
    max_depth: int = 10
    target: complex | None = None
    method: str = "winding"
    threads: int = 1
    out: str | None = None


def default_target(b: int, d: int) -> complex:
    if b == 1:
        return complex(-float(lambda_s(d + 1)))
    upper = [p for p in parabolic_parameters(b, d) if p.lam.imag > 1e-12]
    return min(upper, key=lambda p: (p.lam.imag, p.rho)).lam


def run(cfg: AccumulationConfig) -> list:
    target = default_target(cfg.b, cfg.d) if cfg.target is None else cfg.target
    started = time.perf_counter()
    rows = accumulation_experiment(cfg.b, cfg.d, target, range(cfg.min_depth, cfg.max_depth + 1),
                                   method=cfg.method, threads=cfg.threads)
    print("target %.6f%+.6fi, %.1fs" % (target.real, target.imag, time.perf_counter() - started))
    for r in rows:
        print("m=%2d degree=%7d min_dist=%.6e" % (r.m, r.degree, r.min_dist))
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["m", "degree", "min_dist"])
            w.writerows((r.m, r.degree, repr(r.min_dist)) for r in rows)
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--b", type=int, default=1)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--min-depth", type=int, default=2)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--target", type=lambda s: complex(s.replace("i", "j")), default=None)
    p.add_argument("--method", choices=["winding", "roots"], default="winding")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None)
    a = p.parse_args(argv)
    run(AccumulationConfig(a.b, a.d, a.min_depth, a.max_depth, a.target, a.method, a.threads, a.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
