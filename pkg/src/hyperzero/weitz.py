"""Self-avoiding hypertree construction rooted at a vertex.

For a connected hypergraph H and a vertex v the construction yields a
linear hypertree T with root r and a labelling of T's vertices by vertices
of H.  With lambda pulled back along the labelling, the root ratio of T
equals the ratio of H at v, and Z(H) divides Z(T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateRatioError, InputError, ResourceError, TheoremViolation
from .hypergraph import Hypergraph, component_of, is_linear_hypertree
from .partition import hypertree_poly, hypertree_ratio, ratio, z_poly
from .poly import Polynomial
from .sphere import INF

DEFAULT_VERTEX_CAP = 10**6


@dataclass(frozen=True)
class RootedHypertree:
    tree: Hypergraph
    root: int
    labels: tuple[int, ...]

    def to_json(self) -> dict:
        data = self.tree.to_json()
        data["root"] = self.root
        data["labels"] = list(self.labels)
        return data


class _Budget:
    def __init__(self, cap: int):
        self.cap = cap
        self.used = 0

    def take(self, k: int) -> None:
        self.used += k
        if self.used > self.cap:
            raise ResourceError("self-avoiding tree exceeds %d vertices" % self.cap)


def _component(vertices: set, edges: list, v: int) -> tuple[set, list]:
    """Vertices and edges (in order) of the component of v."""
    incident: dict = {u: [] for u in vertices}
    for i, e in enumerate(edges):
        for u in e:
            incident[u].append(i)
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for i in incident[u]:
            for x in edges[i]:
                if x not in seen:
                    seen.add(x)
                    stack.append(x)
    return seen, [e for e in edges if e[0] in seen]


def _is_tree(vertices: set, edges: list) -> bool:
    # connected is given; the incidence graph is a tree iff this count holds
    return sum(len(e) - 1 for e in edges) == len(vertices) - 1


def _build(vertices: set, edges: list, v: int, budget: _Budget):
    """Returns (vertex labels, edges over local ids, root id) for a connected input."""
    if _is_tree(vertices, edges):
        order = sorted(vertices)
        budget.take(len(order))
        local = {u: i for i, u in enumerate(order)}
        return order, [tuple(sorted(local[u] for u in e)) for e in edges], local[v]
    budget.take(1)
    labels = [v]
    tree_edges: list[tuple[int, ...]] = []
    at_v = [i for i, e in enumerate(edges) if v in e]
    for step, idx in enumerate(at_v):
        removed = set(at_v[: step + 1])
        remaining = [e for i, e in enumerate(edges) if i not in removed]
        others = [u for u in edges[idx] if u != v]
        child_roots = []
        for j, vj in enumerate(others):
            gone = {v, *others[:j]}
            sub_vertices = vertices - gone
            sub_edges = []
            for e in remaining:
                rest = tuple(u for u in e if u not in gone)
                if rest:
                    sub_edges.append(rest)
            comp_vertices, comp_edges = _component(sub_vertices, sub_edges, vj)
            sub_labels, sub_tree_edges, sub_root = _build(comp_vertices, comp_edges, vj, budget)
            offset = len(labels)
            labels.extend(sub_labels)
            tree_edges.extend(tuple(u + offset for u in e) for e in sub_tree_edges)
            child_roots.append(sub_root + offset)
        tree_edges.append(tuple(sorted([0, *child_roots])))
    return labels, tree_edges, 0


def build_weitz(H: Hypergraph, v: int, vertex_cap: int = DEFAULT_VERTEX_CAP) -> RootedHypertree:
    """Self-avoiding hypertree of H at v.

    Edges at v are processed in input order and the other vertices of an
    edge in increasing id order.  If the component of v is already a
    linear hypertree it is returned as is (relabelled only when H is
    disconnected).
    """
    if not 0 <= v < H.n:
        raise InputError("vertex id %d out of range for n=%d" % (v, H.n))
    comp, mapping = component_of(H, v)
    inverse = {new: old for old, new in mapping.items()}
    labels, edges, root = _build(set(range(comp.n)), list(comp.edges), mapping[v], _Budget(vertex_cap))
    tree = Hypergraph(len(labels), tuple(edges))
    return RootedHypertree(tree, root, tuple(inverse[u] for u in labels))


def prune_unit_edges(T: RootedHypertree) -> RootedHypertree:
    """Remove unit-edge vertices with every edge meeting them, keep the root's component.

    The root ratio is unchanged.  A unit edge at the root forces the root
    out of every independent set, so that case is rejected.
    """
    forced = {e[0] for e in T.tree.edges if len(e) == 1}
    if T.root in forced:
        raise DegenerateRatioError("the root carries a unit edge")
    kept_edges = [e for e in T.tree.edges if forced.isdisjoint(e)]
    keep = [u for u in range(T.tree.n) if u not in forced]
    local = {u: i for i, u in enumerate(keep)}
    stripped = Hypergraph(len(keep), tuple(tuple(local[u] for u in e) for e in kept_edges))
    comp, mapping = component_of(stripped, local[T.root])
    inverse = {new: old for old, new in mapping.items()}
    labels = tuple(T.labels[keep[inverse[i]]] for i in range(comp.n))
    return RootedHypertree(comp, mapping[local[T.root]], labels)


@dataclass(frozen=True)
class RatioReport:
    passed: bool
    samples: int
    max_relative_error: float
    inconclusive: int


def _relative_gap(a, b) -> float:
    if a is INF or b is INF:
        return 0.0 if a is b else math.inf
    return abs(a - b) / max(abs(a), abs(b), 1e-300)


def verify_ratio_identity(
    H: Hypergraph,
    v: int,
    samples: int = 10,
    rng: np.random.Generator | None = None,
    tree: RootedHypertree | None = None,
    tol: float = 1e-10,
    retries: int = 5,
) -> RatioReport:
    """Compare R_v(H; lam) with R_root(T; lam o labels) on random complex lam.

    Fugacities are drawn uniformly from the square [-1, 1]^2.  A degenerate
    0/0 draw is redrawn up to `retries` times before the sample is counted
    as inconclusive.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    T = build_weitz(H, v) if tree is None else tree
    worst = 0.0
    inconclusive = 0
    for _ in range(samples):
        for _attempt in range(retries + 1):
            lam = rng.uniform(-1, 1, H.n) + 1j * rng.uniform(-1, 1, H.n)
            try:
                lhs = ratio(H, v, lam)
                rhs = hypertree_ratio(T.tree, T.root, [lam[u] for u in T.labels])
            except DegenerateRatioError:
                continue
            worst = max(worst, _relative_gap(lhs, rhs))
            break
        else:
            inconclusive += 1
    return RatioReport(worst <= tol, samples, worst, inconclusive)


def verify_divisibility(H: Hypergraph, v: int, prune: bool = False,
                        tree: RootedHypertree | None = None) -> Polynomial:
    """Exact quotient Z(T) / Z(H_v) where H_v is the component of v.

    A non-zero remainder contradicts the divisibility theorem and raises
    TheoremViolation.
    """
    comp, mapping = component_of(H, v)
    T = build_weitz(H, v) if tree is None else tree
    if prune:
        T = prune_unit_edges(T)
    zt = hypertree_poly(T.tree, T.root)
    zh = z_poly(comp)
    quotient = zt.exact_quotient(zh)
    if quotient is None:
        _, remainder = divmod(zt, zh)
        raise TheoremViolation(
            "Z(H) does not divide Z(T)", remainder=[str(c) for c in remainder.coeffs]
        )
    return quotient


__all__ = [
    "RootedHypertree",
    "RatioReport",
    "build_weitz",
    "prune_unit_edges",
    "verify_ratio_identity",
    "verify_divisibility",
    "is_linear_hypertree",
]
