"""Finite hypergraphs on vertices 0..n-1 and the subhypergraph operations.

Edges keep their input order, which matters for the self-avoiding tree
construction.  Each edge is stored as a sorted tuple.  Repeated edges are
allowed and kept, so an edge is identified by its position in `edges`.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, NamedTuple

from .errors import InputError


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...] = ()
    _incidence: tuple = field(default=(), init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.n, int) or isinstance(self.n, bool) or self.n < 0:
            raise InputError("vertex count must be a non-negative integer, got %r" % (self.n,))
        cleaned = []
        for e in self.edges:
            try:
                verts = [int(u) for u in e]
            except (TypeError, ValueError):
                raise InputError("edge %r is not a list of vertex ids" % (e,)) from None
            if not verts:
                raise InputError("empty edge")
            if len(set(verts)) != len(verts):
                raise InputError("edge %r repeats a vertex" % (list(e),))
            for u in verts:
                if u < 0 or u >= self.n:
                    raise InputError("vertex id %d out of range for n=%d" % (u, self.n))
            cleaned.append(tuple(sorted(verts)))
        object.__setattr__(self, "edges", tuple(cleaned))
        incidence: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(cleaned):
            for u in e:
                incidence[u].append(i)
        object.__setattr__(self, "_incidence", tuple(tuple(x) for x in incidence))

    def incident_edges(self, v: int) -> tuple[int, ...]:
        """Indices of the edges containing v, in edge order."""
        return self._incidence[v]

    def degree(self, v: int) -> int:
        return len(self._incidence[v])

    @property
    def max_degree(self) -> int:
        return max((len(x) for x in self._incidence), default=0)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


class Reduction(NamedTuple):
    graph: Hypergraph
    forced_out: frozenset
    vertex_map: dict


@dataclass(frozen=True)
class Classification:
    max_degree: int
    is_linear: bool
    is_linear_hypertree: bool
    uniformity: int | None
    components: list

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "is_linear": self.is_linear,
            "is_linear_hypertree": self.is_linear_hypertree,
            "uniformity": self.uniformity,
            "components": self.components,
        }


def _relabel(n: int, keep: Iterable[int], edges: Iterable[tuple[int, ...]]) -> tuple[Hypergraph, dict]:
    mapping = {old: new for new, old in enumerate(sorted(keep))}
    new_edges = [tuple(mapping[u] for u in e) for e in edges]
    return Hypergraph(len(mapping), tuple(new_edges)), mapping


def _check_vertices(H: Hypergraph, S: Iterable[int]) -> set[int]:
    S = set(S)
    for u in S:
        if not 0 <= u < H.n:
            raise InputError("vertex id %d out of range for n=%d" % (u, H.n))
    return S


def remove_vertices(H: Hypergraph, S: Iterable[int]) -> tuple[Hypergraph, dict]:
    """Induced subhypergraph on V minus S: drop S and every edge meeting S."""
    S = _check_vertices(H, S)
    keep = [u for u in range(H.n) if u not in S]
    edges = [e for e in H.edges if S.isdisjoint(e)]
    return _relabel(H.n, keep, edges)


def shrink(H: Hypergraph, S: Iterable[int]) -> tuple[Hypergraph, dict]:
    """Delete S from the vertex set and from every edge.

    Edges lying entirely inside S disappear; the others are replaced by
    their part outside S.  Edges that become equal are kept as repeats.
    """
    S = _check_vertices(H, S)
    keep = [u for u in range(H.n) if u not in S]
    edges = []
    for e in H.edges:
        rest = tuple(u for u in e if u not in S)
        if rest:
            edges.append(rest)
    return _relabel(H.n, keep, edges)


def remove_edges(H: Hypergraph, F: Iterable[int]) -> Hypergraph:
    """Drop the edges at the given positions; the vertex set is unchanged."""
    F = set(F)
    for i in F:
        if not 0 <= i < len(H.edges):
            raise InputError("edge index %d out of range" % i)
    return Hypergraph(H.n, tuple(e for i, e in enumerate(H.edges) if i not in F))


def reduce(H: Hypergraph) -> Reduction:
    """Strip the structure that cannot change the independence polynomial.

    Vertices carrying a unit edge are never in an independent set, so they
    are removed together with every edge meeting them.  An edge that
    strictly contains another edge is redundant, and repeated edges are
    merged.  The result has no unit edges and no nested edges.
    """
    forced = {e[0] for e in H.edges if len(e) == 1}
    edges = {frozenset(e) for e in H.edges if forced.isdisjoint(e)}
    minimal = [e for e in edges if not any(f < e for f in edges)]
    order = {frozenset(e): i for i, e in reversed(list(enumerate(H.edges)))}
    minimal.sort(key=lambda e: order[e])
    keep = [u for u in range(H.n) if u not in forced]
    graph, mapping = _relabel(H.n, keep, [tuple(sorted(e)) for e in minimal])
    return Reduction(graph, frozenset(forced), mapping)


def components(H: Hypergraph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * H.n
    out = []
    for s in range(H.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for i in H.incident_edges(u):
                for w in H.edges[i]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
        out.append(sorted(comp))
    return out


def component_of(H: Hypergraph, v: int) -> tuple[Hypergraph, dict]:
    """The component containing v, relabelled; returns the old to new map."""
    for comp in components(H):
        if v in comp:
            members = set(comp)
            return _relabel(H.n, comp, [e for e in H.edges if e[0] in members])
    raise InputError("vertex id %d out of range for n=%d" % (v, H.n))


def is_linear(H: Hypergraph) -> bool:
    seen: dict[tuple[int, int], int] = {}
    for i, e in enumerate(H.edges):
        for a in range(len(e)):
            for b in range(a + 1, len(e)):
                pair = (e[a], e[b])
                if pair in seen:
                    return False
                seen[pair] = i
    return True


def is_linear_hypertree(H: Hypergraph) -> bool:
    """Connected, linear, and sum(|e| - 1) = n - 1.

    Equivalently the vertex-edge incidence graph is a tree, so paths
    between vertices are unique.
    """
    if H.n == 0:
        return False
    if sum(len(e) - 1 for e in H.edges) != H.n - 1:
        return False
    return is_linear(H) and len(components(H)) == 1


def uniformity(H: Hypergraph) -> int | None:
    sizes = {len(e) for e in H.edges}
    return sizes.pop() if len(sizes) == 1 else None


def classify(H: Hypergraph) -> Classification:
    return Classification(
        max_degree=H.max_degree,
        is_linear=is_linear(H),
        is_linear_hypertree=is_linear_hypertree(H),
        uniformity=uniformity(H),
        components=components(H),
    )


def from_json(data) -> Hypergraph:
    if not isinstance(data, dict) or "n" not in data or "edges" not in data:
        raise InputError('hypergraph JSON must be an object with "n" and "edges"')
    if not isinstance(data["edges"], list):
        raise InputError('"edges" must be a list of lists')
    return Hypergraph(data["n"], tuple(tuple(e) if isinstance(e, list) else e for e in data["edges"]))


def load(path: str | Path) -> Hypergraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc.strerror)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc)) from None
    return from_json(data)
