"""Independence polynomials, occupation ratios, and independent-set counts.

Two evaluation routes exist.  `enumerate_independent_sets` walks every
independent set by backtracking and is the reference.  The deletion
recursion

    Z(H) = Z(H - e) - prod_{u in e} lam_u * Z((H - e) shrink e)

is memoized on the (vertex set, edge set) pair, splits components, drops
redundant edges, and hands linear hypertree components to the linear-time
tree recursion.  The same code runs over complex numbers, exact rationals,
and exact polynomials; the float and exact entry points are kept separate.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Number
from typing import Sequence

from .errors import DegenerateRatioError, InputError, ResourceError
from .hypergraph import Hypergraph
from .poly import Polynomial
from .sphere import INF

ENUMERATION_MAX_VERTICES = 30
ENUMERATION_FREE_SIZE = 4
DEFAULT_CALL_BUDGET = 2_000_000


def enumerate_independent_sets(H: Hypergraph, max_size: int | None = None) -> list[int]:
    """Counts of independent sets by size: result[k] = number of size k, trailing zeros dropped.

    Unbounded enumeration is limited to n <= 30.  With max_size <= 4 any
    n is accepted.
    """
    if max_size is not None and max_size < 0:
        raise InputError("max_size must be non-negative")
    if H.n > ENUMERATION_MAX_VERTICES and (max_size is None or max_size > ENUMERATION_FREE_SIZE):
        raise ResourceError(
            "enumeration over %d vertices needs max_size <= %d" % (H.n, ENUMERATION_FREE_SIZE)
        )
    limit = H.n if max_size is None else min(max_size, H.n)
    edge_masks = [sum(1 << u for u in e) for e in H.edges]
    # only edges whose largest vertex is v can be completed when v is added
    closing: list[list[int]] = [[] for _ in range(H.n)]
    for m, e in zip(edge_masks, H.edges):
        closing[e[-1]].append(m)
    counts = [0] * (limit + 1)
    n = H.n

    def walk(v: int, chosen: int, size: int) -> None:
        counts[size] += 1
        if size == limit:
            return
        for u in range(v, n):
            with_u = chosen | (1 << u)
            if all(m & with_u != m for m in closing[u]):
                walk(u + 1, with_u, size + 1)

    walk(0, 0, 0)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


# -- generic partition function -------------------------------------------------


class _Engine:
    """Deletion recursion over a commutative ring given by `weights` and `one`."""

    def __init__(self, weights: Sequence, one, budget: int = DEFAULT_CALL_BUDGET):
        self.w = weights
        self.one = one
        self.memo: dict = {}
        self.calls = 0
        self.budget = budget

    def z(self, vertices: frozenset, edges: frozenset):
        vertices, edges, free = _simplify(vertices, edges)
        result = self.one
        for u in sorted(free):
            result = result * (self.one + self.w[u])
        for cv, ce in _split(vertices, edges):
            result = result * self._component(cv, ce)
        return result

    def _component(self, vertices: frozenset, edges: frozenset):
        key = (vertices, edges)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.calls += 1
        if self.calls > self.budget:
            raise ResourceError("deletion recursion exceeded %d calls" % self.budget)
        if sum(len(e) - 1 for e in edges) == len(vertices) - 1:
            root = min(vertices)
            zin, zout = _tree_pair(root, _adjacency(vertices, edges), self.w, self.one)
            value = zin + zout
        else:
            e = _pick_edge(edges)
            rest = edges - {e}
            inside = self.one
            for u in sorted(e):
                inside = inside * self.w[u]
            shrunk = frozenset(f - e for f in rest)
            value = self.z(vertices, rest) - inside * self.z(vertices - e, shrunk)
        self.memo[key] = value
        return value


def _simplify(vertices: frozenset, edges: frozenset):
    """Drop forced-out vertices, redundant edges, and split off free vertices."""
    forced = {next(iter(e)) for e in edges if len(e) == 1}
    while forced:
        vertices = vertices - forced
        edges = frozenset(e for e in edges if forced.isdisjoint(e))
        forced = {next(iter(e)) for e in edges if len(e) == 1}
    if len(edges) > 1:
        by_size = sorted(edges, key=len)
        kept: list[frozenset] = []
        for e in by_size:
            if not any(f < e for f in kept):
                kept.append(e)
        edges = frozenset(kept)
    covered = set().union(*edges) if edges else set()
    free = vertices - covered
    return vertices - free, edges, free


def _split(vertices: frozenset, edges: frozenset):
    if not vertices:
        return []
    parent = {u: u for u in vertices}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for e in edges:
        it = iter(e)
        a = find(next(it))
        for u in it:
            b = find(u)
            if a != b:
                parent[b] = a
    groups: dict = {}
    for u in vertices:
        groups.setdefault(find(u), set()).add(u)
    edge_groups: dict = {}
    for e in edges:
        edge_groups.setdefault(find(next(iter(e))), []).append(e)
    return [(frozenset(vs), frozenset(edge_groups.get(r, ()))) for r, vs in groups.items()]


def _pick_edge(edges: frozenset) -> frozenset:
    degree: dict = {}
    for e in edges:
        for u in e:
            degree[u] = degree.get(u, 0) + 1
    return max(edges, key=lambda e: (sum(degree[u] for u in e), sorted(e)))


def _adjacency(vertices, edges) -> dict:
    edge_list = [tuple(sorted(e)) for e in sorted(edges, key=sorted)]
    adj: dict = {u: [] for u in vertices}
    for i, e in enumerate(edge_list):
        for u in e:
            adj[u].append(i)
    return {"adj": adj, "edges": edge_list}


def _tree_pair(root, structure: dict, w, one, normalize: bool = False):
    """(Z_in, Z_out) at `root` of a linear hypertree by the product recursion.

    With `normalize` every intermediate pair is divided by its larger
    modulus; the ratio is unchanged and long trees cannot overflow.
    """
    adj, edges = structure["adj"], structure["edges"]
    order = []
    stack = [(root, -1)]
    while stack:
        u, pe = stack.pop()
        order.append((u, pe))
        for ei in adj[u]:
            if ei != pe:
                for x in edges[ei]:
                    if x != u:
                        stack.append((x, ei))
    zin: dict = {}
    ztot: dict = {}
    zout_root = None
    for u, pe in reversed(order):
        prod_in = w[u]
        prod_out = one
        for ei in adj[u]:
            if ei == pe:
                continue
            every = one
            inside = one
            for x in edges[ei]:
                if x != u:
                    every = every * ztot[x]
                    inside = inside * zin[x]
            prod_in = prod_in * (every - inside)
            prod_out = prod_out * every
        if normalize:
            scale = max(abs(prod_in), abs(prod_out))
            if scale != 0:
                prod_in = prod_in / scale
                prod_out = prod_out / scale
        zin[u] = prod_in
        ztot[u] = prod_in + prod_out
        if u == root:
            zout_root = prod_out
    return zin[root], zout_root


# -- weights ----------------------------------------------------------------------


def _float_weights(H: Hypergraph, lam) -> list[complex]:
    if isinstance(lam, Number):
        return [complex(lam)] * H.n
    values = [complex(x) for x in lam]
    if len(values) != H.n:
        raise InputError("expected %d fugacities, got %d" % (H.n, len(values)))
    return values


def _exact_value(x):
    if isinstance(x, bool) or not isinstance(x, (int, Fraction, Polynomial)):
        raise InputError("exact evaluation needs int or Fraction fugacities, got %r" % (x,))
    return x


def _exact_weights(H: Hypergraph, lam) -> list:
    if isinstance(lam, (int, Fraction, Polynomial)) and not isinstance(lam, bool):
        return [lam] * H.n
    values = [_exact_value(x) for x in lam]
    if len(values) != H.n:
        raise InputError("expected %d fugacities, got %d" % (H.n, len(values)))
    return values


def _all(H: Hypergraph):
    return frozenset(range(H.n)), frozenset(frozenset(e) for e in H.edges)


# -- public entry points ----------------------------------------------------------


def z_poly(H: Hypergraph) -> Polynomial:
    """Univariate independence polynomial with exact integer coefficients."""
    x = Polynomial.x()
    return _Engine([x] * H.n, Polynomial([1])).z(*_all(H))


def z_eval(H: Hypergraph, lam) -> complex:
    """Z(H; lam) in floating point; lam is a scalar or one value per vertex."""
    return complex(_Engine(_float_weights(H, lam), 1 + 0j).z(*_all(H)))


def z_eval_exact(H: Hypergraph, lam):
    """Z(H; lam) exactly for int or Fraction fugacities."""
    return _Engine(_exact_weights(H, lam), 1).z(*_all(H))


def _in_out(H: Hypergraph, v: int, weights, one):
    if not 0 <= v < H.n:
        raise InputError("vertex id %d out of range for n=%d" % (v, H.n))
    vertices, edges = _all(H)
    engine = _Engine(weights, one)
    zout = engine.z(vertices - {v}, frozenset(e for e in edges if v not in e))
    if frozenset((v,)) in edges:
        return 0 * one, zout
    shrunk = frozenset(e - {v} for e in edges)
    return weights[v] * engine.z(vertices - {v}, shrunk), zout


def z_in_out(H: Hypergraph, v: int, lam) -> tuple[complex, complex]:
    """(Z_in, Z_out) at v: weight of independent sets containing / avoiding v."""
    zin, zout = _in_out(H, v, _float_weights(H, lam), 1 + 0j)
    return complex(zin), complex(zout)


def z_in_out_exact(H: Hypergraph, v: int, lam):
    return _in_out(H, v, _exact_weights(H, lam), 1)


def _divide(zin, zout):
    if zout == 0:
        if zin == 0:
            raise DegenerateRatioError("Z_in and Z_out both vanish")
        return INF
    return zin / zout


def ratio(H: Hypergraph, v: int, lam):
    """Occupation ratio Z_in / Z_out at v; INF when only Z_out vanishes."""
    return _divide(*z_in_out(H, v, lam))


def ratio_exact(H: Hypergraph, v: int, lam):
    zin, zout = z_in_out_exact(H, v, lam)
    if zout == 0:
        return _divide(zin, zout)
    return Fraction(zin) / Fraction(zout)


# -- hypertrees -------------------------------------------------------------------


def _tree_structure(T: Hypergraph, root: int) -> dict:
    if not 0 <= root < T.n:
        raise InputError("root %d out of range for n=%d" % (root, T.n))
    adj = {u: list(T.incident_edges(u)) for u in range(T.n)}
    return {"adj": adj, "edges": list(T.edges)}


def _check_tree(T: Hypergraph) -> None:
    from .hypergraph import is_linear_hypertree

    if not is_linear_hypertree(T):
        raise InputError("expected a connected linear hypertree")


def hypertree_pair_exact(T: Hypergraph, root: int, lam):
    """Exact (Z_in, Z_out) at the root of a linear hypertree."""
    _check_tree(T)
    weights = _exact_weights(T, lam)
    one = Polynomial([1]) if any(isinstance(x, Polynomial) for x in weights) else 1
    return _tree_pair(root, _tree_structure(T, root), weights, one)


def hypertree_poly(T: Hypergraph, root: int = 0) -> Polynomial:
    zin, zout = hypertree_pair_exact(T, root, Polynomial.x())
    return zin + zout


def hypertree_ratio(T: Hypergraph, root: int, lam):
    """Root ratio of a linear hypertree in floating point, overflow-free."""
    _check_tree(T)
    zin, zout = _tree_pair(root, _tree_structure(T, root), _float_weights(T, lam), 1 + 0j, normalize=True)
    return _divide(complex(zin), complex(zout))


def tree_recursion_ratio(T: Hypergraph, root: int, lam) -> complex:
    """Root ratio from R_v = lam_v * prod_e (1 - prod_{u in e - v} R_u / (1 + R_u)).

    Plain floating point recursion on the ratios themselves; a child ratio
    of -1 makes the parent ratio undefined here, use `hypertree_ratio` for
    the pole-aware version.
    """
    _check_tree(T)
    w = _float_weights(T, lam)
    structure = _tree_structure(T, root)
    adj, edges = structure["adj"], structure["edges"]
    order = []
    stack = [(root, -1)]
    while stack:
        u, pe = stack.pop()
        order.append((u, pe))
        for ei in adj[u]:
            if ei != pe:
                stack.extend((x, ei) for x in edges[ei] if x != u)
    r: dict = {}
    for u, pe in reversed(order):
        value = w[u]
        for ei in adj[u]:
            if ei == pe:
                continue
            prod = 1 + 0j
            for x in edges[ei]:
                if x != u:
                    prod *= r[x] / (1 + r[x])
            value *= 1 - prod
        r[u] = value
    return r[root]

