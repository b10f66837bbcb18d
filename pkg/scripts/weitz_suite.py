"""Check divisibility and the ratio identity for the hypertree of every root.

    python scripts/weitz_suite.py --random 500 --n-max 9 --seed 3

Runs all connected graphs on at most --graph-n vertices (networkx atlas)
followed by random connected linear hypergraphs.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
import time
from dataclasses import dataclass

import numpy as np

from hyperzero.hypergraph import Hypergraph, components
from hyperzero.weitz import build_weitz, verify_divisibility, verify_ratio_identity


@dataclass
class SuiteConfig:
    graph_n: int = 6
    random: int = 200
    n_max: int = 9
    max_edge: int = 3
    max_degree: int = 4
    samples: int = 10
    seed: int = 0


def atlas(max_n: int):
    import networkx as nx

    for g in nx.graph_atlas_g():
        if 1 <= g.number_of_nodes() <= max_n and nx.is_connected(g):
            yield Hypergraph(g.number_of_nodes(), tuple(tuple(e) for e in g.edges()))


def random_linear(rng: random.Random, cfg: SuiteConfig) -> Hypergraph:
    """Random edges kept only when they preserve linearity and the degree cap; retried until connected."""
    while True:
        n = rng.randint(2, cfg.n_max)
        edges, pairs, degree = [], set(), [0] * n
        for _ in range(4 * n):
            e = tuple(sorted(rng.sample(range(n), rng.randint(2, min(cfg.max_edge, n)))))
            new = set(itertools.combinations(e, 2))
            if new & pairs or any(degree[u] >= cfg.max_degree for u in e):
                continue
            edges.append(e)
            pairs |= new
            for u in e:
                degree[u] += 1
        H = Hypergraph(n, tuple(edges))
        if len(components(H)) == 1:
            return H


def run(cfg: SuiteConfig) -> dict:
    pyrng = random.Random(cfg.seed)
    rng = np.random.default_rng(cfg.seed)
    instances = list(atlas(cfg.graph_n)) + [random_linear(pyrng, cfg) for _ in range(cfg.random)]
    started = time.perf_counter()
    roots = biggest = 0
    worst = 0.0
    for H in instances:
        for v in range(H.n):
            T = build_weitz(H, v)
            biggest = max(biggest, T.tree.n)
            verify_divisibility(H, v, tree=T)
            rep = verify_ratio_identity(H, v, samples=cfg.samples, rng=rng, tree=T)
            if not rep.passed:
                raise SystemExit("ratio identity failed for %r at %d: %.3e" % (H, v, rep.max_relative_error))
            worst = max(worst, rep.max_relative_error)
            roots += 1
    summary = {"instances": len(instances), "roots": roots, "largest_tree": biggest,
               "max_rel_error": worst, "seconds": time.perf_counter() - started}
    print(" ".join("%s=%s" % kv for kv in summary.items()))
    return summary


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(SuiteConfig()).items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=default)
    run(SuiteConfig(**vars(p.parse_args(argv))))
    return 0


if __name__ == "__main__":
    sys.exit(main())
