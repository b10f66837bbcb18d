"""Independent reference implementations used only by the tests.

Everything here is brute force over vertex subsets or a direct
transcription of a definition, so it shares no code with the package.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from hyperzero.hypergraph import Hypergraph


def independent_subsets(n, edges):
    edge_sets = [frozenset(e) for e in edges]
    for r in range(n + 1):
        for U in itertools.combinations(range(n), r):
            s = frozenset(U)
            if not any(e <= s for e in edge_sets):
                yield s


def brute_counts(H: Hypergraph) -> list[int]:
    counts = [0] * (H.n + 1)
    for U in independent_subsets(H.n, H.edges):
        counts[len(U)] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def brute_z(H: Hypergraph, lam) -> complex:
    lam = [lam] * H.n if np.isscalar(lam) else list(lam)
    total = 0
    for U in independent_subsets(H.n, H.edges):
        term = 1
        for u in U:
            term *= lam[u]
        total += term
    return total


def brute_in_out(H: Hypergraph, v: int, lam):
    lam = [lam] * H.n if np.isscalar(lam) else list(lam)
    zin = zout = 0
    for U in independent_subsets(H.n, H.edges):
        term = 1
        for u in U:
            term *= lam[u]
        if v in U:
            zin += term
        else:
            zout += term
    return zin, zout


def formal_log_reference(counts, m):
    """log of sum_k counts[k] x^k up to x^m via the derivative identity a' = (log a)' a."""
    from fractions import Fraction

    a = [Fraction(c) for c in counts] + [Fraction(0)] * (m + 1)
    b = [Fraction(0)] * (m + 1)  # b[k] = coefficient of x^k in log a
    for k in range(1, m + 1):
        s = k * a[k]
        for j in range(1, k):
            s -= j * b[j] * a[k - j]
        b[k] = s / k
    return b[1:]


# -- random instances ---------------------------------------------------------------


def random_linear_hypertree(rng: random.Random, n_max: int, max_edge: int = 3,
                            max_degree: int | None = None) -> Hypergraph:
    """Grow a linear hypertree by hanging fresh edges on existing vertices."""
    target = rng.randint(1, n_max)
    n = 1
    edges = []
    degree = [0]
    while n < target:
        hosts = [u for u in range(n) if max_degree is None or degree[u] < max_degree]
        if not hosts:
            break
        u = rng.choice(hosts)
        size = rng.randint(2, min(max_edge, target - n + 1))
        new = list(range(n, n + size - 1))
        edges.append((u, *new))
        degree[u] += 1
        degree.extend([1] * len(new))
        n += len(new)
    return Hypergraph(n, tuple(edges))


def random_connected_linear(rng: random.Random, n_max: int = 9, max_edge: int = 3,
                            max_degree: int = 4, extra: int = 3) -> Hypergraph:
    """A random linear hypertree plus a few extra edges that keep linearity and the degree bound."""
    T = random_linear_hypertree(rng, n_max, max_edge, max_degree)
    edges = [tuple(e) for e in T.edges]
    degree = [0] * T.n
    pairs = set()
    for e in edges:
        for u in e:
            degree[u] += 1
        pairs.update(itertools.combinations(sorted(e), 2))
    for _ in range(extra * 4):
        if len(edges) >= len(T.edges) + extra or T.n < 2:
            break
        size = rng.randint(2, min(max_edge, T.n))
        e = tuple(sorted(rng.sample(range(T.n), size)))
        if any(degree[u] >= max_degree for u in e):
            continue
        new_pairs = set(itertools.combinations(e, 2))
        if new_pairs & pairs:
            continue
        edges.append(e)
        pairs |= new_pairs
        for u in e:
            degree[u] += 1
    return Hypergraph(T.n, tuple(edges))


def random_hypergraph(rng: random.Random, n: int, m: int, max_edge: int = 3,
                      max_degree: int | None = None) -> Hypergraph:
    """Edges of size 1..max_edge drawn uniformly, rejecting any that break the degree bound."""
    degree = [0] * n
    edges = []
    for _ in range(m * 4):
        if len(edges) >= m or n == 0:
            break
        e = tuple(sorted(rng.sample(range(n), rng.randint(1, min(max_edge, n)))))
        if max_degree is not None and any(degree[u] >= max_degree for u in e):
            continue
        edges.append(e)
        for u in e:
            degree[u] += 1
    return Hypergraph(n, tuple(edges))
