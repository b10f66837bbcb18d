"""Trace the parameters with an indifferent fixed point for several (b, d).

    python scripts/indifferent_curves.py --pairs 1,2 1,3 4,2 --steps 1440 --out-dir curves/

Writes one CSV per pair (theta, branch, re_w, im_w, re_lambda, im_lambda)
and prints rho(b, d) with its asymptotic estimate.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

from hyperzero.dynamics import indifferent_curve, rho, rho_asymptotic


@dataclass
class CurveConfig:
    pairs: list[tuple[int, int]] = field(default_factory=lambda: [(1, 2), (2, 2), (4, 2)])
    steps: int = 720
    out_dir: str | None = None


def run(cfg: CurveConfig) -> dict:
    thetas = [2 * math.pi * k / cfg.steps for k in range(cfg.steps)]
    curves = {}
    for b, d in cfg.pairs:
        pts = indifferent_curve(b, d, thetas)
        curves[(b, d)] = pts
        r = rho(b, d)
        print("b=%d d=%d  rho=%.6f at lambda=%.6f%+.6fi  asymptotic %.6f  points %d"
              % (b, d, r.rho, r.lam.real, r.lam.imag, rho_asymptotic(b, d), len(pts)))
        if cfg.out_dir:
            out = Path(cfg.out_dir)
            out.mkdir(parents=True, exist_ok=True)
            with open(out / ("indifferent_b%d_d%d.csv" % (b, d)), "w", newline="") as fh:
                w = csv.writer(fh)
                w.writerow(["theta", "branch", "re_w", "im_w", "re_lambda", "im_lambda"])
                w.writerows((repr(p.theta), p.branch, repr(p.w.real), repr(p.w.imag),
                             repr(p.lam.real), repr(p.lam.imag)) for p in pts)
    return curves


def _pair(text: str) -> tuple[int, int]:
    b, d = text.split(",")
    return int(b), int(d)


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--pairs", type=_pair, nargs="+", default=None, help="b,d pairs")
    p.add_argument("--steps", type=int, default=720)
    p.add_argument("--out-dir", default=None)
    a = p.parse_args(argv)
    cfg = CurveConfig(steps=a.steps, out_dir=a.out_dir)
    if a.pairs:
        cfg.pairs = a.pairs
    run(cfg)
    return 0


if __name__ == "__main__":
    sys.exit(main())
