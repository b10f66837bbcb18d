"""Zeros of the independence polynomial on the uniform tree family T_m.

T_0 is a single vertex.  T_m has a root with d edges of size b+1, and each
non-root vertex of those edges is the root of a copy of T_{m-1}.  Writing
Z_m = Z(T_m) and I_m for the part containing the root,

    Z_out(m) = Z_{m-1}^(b d),    Z_in(m) = lam (Z_{m-1}^b - I_{m-1}^b)^d,

so the root ratio is R_m = f_{lam,b,d}^m(lam) and
Z_m = prod_{k=0}^m (1 + R_k)^((b d)^(m-k)).  The product form lets the
argument principle count zeros of Z_m inside a circle from the orbit alone,
which is how deep trees (degrees far beyond dense root finding) are handled.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import InputError, NumericError, ResourceError
from .hypergraph import Hypergraph
from .poly import Polynomial
from .roots import RootReport, aberth, clusters, find_roots, initial_circle, poly_roots

DEFAULT_VERTEX_CAP = 10**6
DEFAULT_DEGREE_CAP = 4096


@dataclass(frozen=True)
class TreeFamilySpec:
    b: int
    d: int
    depth: int

    def __post_init__(self):
        for name in ("b", "d"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InputError("%s must be a positive integer" % name)
        if isinstance(self.depth, bool) or not isinstance(self.depth, int) or self.depth < 0:
            raise InputError("depth must be a non-negative integer")

    @property
    def vertex_count(self) -> int:
        n = 1
        for _ in range(self.depth):
            n = 1 + self.d * self.b * n
        return n

    @property
    def degree(self) -> int:
        """Degree of Z(T_m): the independence number, from the pair recursion."""
        d_in, d_out = 1, 0
        for _ in range(self.depth):
            d_in, d_out = (
                1 + self.d * max(j * d_out + (self.b - j) * d_in for j in range(1, self.b + 1)),
                self.b * self.d * max(d_in, d_out),
            )
        return max(d_in, d_out)


def build_tree(spec: TreeFamilySpec, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Hypergraph:
    """T_m as an explicit hypergraph with the root at vertex 0."""
    n = spec.vertex_count
    if n > vertex_cap:
        raise ResourceError("T_%d has %d vertices, cap is %d" % (spec.depth, n, vertex_cap))
    edges = []
    frontier = [0]
    nxt = 1
    for _ in range(spec.depth):
        new_frontier = []
        for u in frontier:
            for _ in range(spec.d):
                members = list(range(nxt, nxt + spec.b))
                nxt += spec.b
                edges.append((u, *members))
                new_frontier.extend(members)
        frontier = new_frontier
    return Hypergraph(n, tuple(edges))


def tree_zpair(spec: TreeFamilySpec, degree_cap: int = DEFAULT_DEGREE_CAP) -> tuple[Polynomial, Polynomial]:
    """Exact (Z_in, Z_out) of T_m at its root."""
    if spec.degree > degree_cap:
        raise ResourceError("Z(T_%d) has degree %d, cap is %d" % (spec.depth, spec.degree, degree_cap))
    x = Polynomial.x()
    z_in, z_out = x, Polynomial([1])
    for _ in range(spec.depth):
        total = z_in + z_out
        total_b = total**spec.b
        z_in, z_out = x * (total_b - z_in**spec.b) ** spec.d, total_b**spec.d
    return z_in, z_out


def tree_zpoly(spec: TreeFamilySpec, degree_cap: int = DEFAULT_DEGREE_CAP) -> Polynomial:
    z_in, z_out = tree_zpair(spec, degree_cap)
    return z_in + z_out


def tree_roots(spec: TreeFamilySpec, degree_cap: int = DEFAULT_DEGREE_CAP,
               method: str = "orbit") -> RootReport:
    """All roots of Z(T_m).

    method "orbit" runs Aberth on the logarithmic derivative of the product
    form, which stays well conditioned where the coefficient form loses
    most of its digits to cancellation; the residual of each root is its
    last Newton correction relative to its modulus.  method "coeffs" works
    from the exact coefficients with a high precision polish and is only
    practical for small degrees.
    """
    if method == "coeffs":
        return find_roots(tree_zpoly(spec, degree_cap))
    if method != "orbit":
        raise InputError("method must be 'orbit' or 'coeffs'")
    n = spec.degree
    if n > degree_cap:
        raise ResourceError("Z(T_%d) has degree %d, cap is %d" % (spec.depth, n, degree_cap))
    if n == 0:
        return RootReport(np.zeros(0, dtype=complex), np.zeros(0), [], 53)
    b, d, m = spec.b, spec.d, spec.depth

    def newton(z):
        with np.errstate(all="ignore"):
            return 1.0 / _log_derivative(b, d, m, z)

    # every coefficient of Z(T_m) is positive with constant term 1; the
    # geometric mean of the root moduli is 1/(leading coefficient)^(1/n)
    lead = tree_zpoly(spec, degree_cap).coeffs[-1] if n <= 64 else None
    radius = float(lead) ** (-1.0 / n) if lead else 0.3
    z, ok, _ = aberth(newton, initial_circle(n, radius), tol=1e-14, max_iter=2000)
    if not ok or not np.all(np.isfinite(z)):
        raise NumericError("Aberth iteration on the tree orbit did not converge", degree=n)
    with np.errstate(all="ignore"):
        res = np.abs(newton(z)) / np.maximum(np.abs(z), 1e-300)
    res = np.where(np.isnan(res), 0.0, res)  # landed exactly on a zero
    return RootReport(z, res, clusters(z, 1e-4), 53)


def _log_derivative(b: int, d: int, depth: int, lam: np.ndarray) -> np.ndarray:
    """Z'/Z for Z = Z(T_depth), as sum_k (b d)^(depth-k) R_k' / (1 + R_k)."""
    lam = np.asarray(lam, dtype=complex)
    r, dr = lam, np.ones_like(lam)
    total = dr / (1 + r) * float(b * d) ** depth
    for k in range(1, depth + 1):
        mu = r / (1 + r)
        dmu = dr / (1 + r) ** 2
        inner = 1 - mu**b
        r_new = lam * inner**d
        dr = inner**d - lam * d * inner ** (d - 1) * b * mu ** (b - 1) * dmu
        r = r_new
        total = total + dr / (1 + r) * float(b * d) ** (depth - k)
    return total


# -- orbit-based evaluation ------------------------------------------------------------


def orbit_values(b: int, d: int, depth: int, lam: np.ndarray) -> np.ndarray:
    """Rows R_0 = lam, R_k = f_{lam,b,d}(R_{k-1}) for k <= depth, vectorised over lam."""
    lam = np.asarray(lam, dtype=complex)
    rows = np.empty((depth + 1,) + lam.shape, dtype=complex)
    r = lam
    rows[0] = r
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        for k in range(1, depth + 1):
            m = r / (1 + r)
            r = lam * (1 - m**b) ** d
            r = np.where(np.isfinite(m), r, 0.0)  # R_{k-1} = -1 gives R_k = inf, then 0
            rows[k] = r
    return rows


def _factors(b: int, d: int, depth: int, lam: np.ndarray) -> np.ndarray:
    return 1 + orbit_values(b, d, depth, lam)


def zero_count(spec: TreeFamilySpec, center: complex, radius: float,
               initial: int = 512, max_samples: int = 1 << 22) -> int:
    """Number of zeros of Z(T_m), with multiplicity, inside |lam - center| < radius.

    The winding number of each factor 1 + R_k around the circle is summed
    with weight (b d)^(m-k).  Sampling is refined wherever consecutive
    values of any factor differ by more than 30% in ratio, so the principal
    argument increments are trustworthy.
    """
    if radius <= 0:
        raise InputError("radius must be positive")
    b, d, m = spec.b, spec.d, spec.depth
    theta = np.linspace(0, 2 * np.pi, initial, endpoint=False)
    values = _factors(b, d, m, center + radius * np.exp(1j * theta))
    while True:
        nxt = np.roll(values, -1, axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = nxt / values
        bad_cols = np.flatnonzero(~np.all(np.isfinite(step) & (np.abs(step - 1) <= 0.3), axis=0))
        if len(bad_cols) == 0:
            break
        if len(theta) + len(bad_cols) > max_samples:
            raise NumericError("argument principle needs more than %d samples" % max_samples)
        upper = np.where(bad_cols + 1 < len(theta), theta[(bad_cols + 1) % len(theta)], 2 * np.pi)
        mids = (theta[bad_cols] + upper) / 2
        new_values = _factors(b, d, m, center + radius * np.exp(1j * mids))
        theta = np.concatenate([theta, mids])
        values = np.concatenate([values, new_values], axis=1)
        order = np.argsort(theta, kind="stable")
        theta = theta[order]
        values = values[:, order]
    winding = np.angle(np.roll(values, -1, axis=1) / values).sum(axis=1) / (2 * np.pi)
    rounded = np.rint(winding)
    if np.max(np.abs(winding - rounded)) > 1e-6:
        raise NumericError("winding numbers are not integral", winding=winding.tolist())
    weight = 1
    total = 0
    for k in range(m, -1, -1):
        total += weight * int(rounded[k])
        weight *= b * d
    return total


def nearest_zero_distance(spec: TreeFamilySpec, target: complex, rel_tol: float = 1e-9) -> float:
    """Distance from `target` to the closest zero of Z(T_m), by bisection on zero_count."""
    scale = max(abs(target), 0.1)
    r = 1e-2 * scale
    if zero_count(spec, target, r) == 0:
        lo = r
        while True:
            r *= 2
            if r > 1e3 * scale:
                raise NumericError("no zero found near the target")
            if zero_count(spec, target, r) > 0:
                hi = r
                break
            lo = r
    else:
        hi = r
        while True:
            r /= 2
            if r < 1e-14 * scale:
                return 0.0
            if zero_count(spec, target, r) == 0:
                lo = r
                break
            hi = r
    while hi - lo > rel_tol * hi:
        mid = (lo + hi) / 2
        if zero_count(spec, target, mid) > 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class AccumulationRow:
    m: int
    degree: int
    min_dist: float


def _row(b: int, d: int, m: int, target: complex, method: str) -> AccumulationRow:
    spec = TreeFamilySpec(b, d, m)
    if method == "roots":
        roots = tree_roots(spec).roots
        dist = float(np.min(np.abs(roots - target)))
    else:
        dist = nearest_zero_distance(spec, target)
    return AccumulationRow(m, spec.degree, dist)


def accumulation_experiment(b: int, d: int, target: complex, depths: Iterable[int],
                            method: str = "winding", threads: int = 1) -> list[AccumulationRow]:
    """Per depth m: degree of Z(T_m) and distance from `target` to its nearest zero.

    method "winding" uses the argument principle on the orbit and works for
    any depth; "roots" computes every root from exact coefficients.
    """
    if method not in ("winding", "roots"):
        raise InputError("method must be 'winding' or 'roots'")
    depths = list(depths)
    target = complex(target)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda m: _row(b, d, m, target, method), depths))
    return [_row(b, d, m, target, method) for m in depths]


__all__ = [
    "TreeFamilySpec",
    "AccumulationRow",
    "build_tree",
    "tree_zpair",
    "tree_zpoly",
    "tree_roots",
    "poly_roots",
    "orbit_values",
    "zero_count",
    "nearest_zero_distance",
    "accumulation_experiment",
]
