"""Approximate Z(H; lam) by truncating the Taylor series of log Z at 0.

The coefficients of log Z up to order m only involve independent sets of
size at most m, so they come from bounded enumeration followed by an exact
formal logarithm.  The method is only offered where the zero-free results
guarantee that log Z is analytic on the path from 0 to lam: the disk
|lam| < lambda_s(D) and the segment 0 < lam < lambda_c(D).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, NumericError, Refusal, ResourceError
from .hypergraph import Hypergraph
from .partition import enumerate_independent_sets, z_eval
from .regions import lambda_c, lambda_s

DEFAULT_MAX_ORDER = 12
EMPIRICAL_MAX_VERTICES = 20


def formal_log(counts: list) -> list[Fraction]:
    """Coefficients a_1..a_m of log(1 + sum_{k>=1} c_k x^k) truncated at order m = len(counts) - 1.

    From P' = P (log P)': k a_k = k c_k - sum_{j=1}^{k-1} j a_j c_{k-j}.
    """
    if not counts or counts[0] != 1:
        raise InputError("the series must start with constant term 1")
    m = len(counts) - 1
    a = [Fraction(0)] * (m + 1)
    for k in range(1, m + 1):
        acc = Fraction(k * counts[k])
        for j in range(1, k):
            acc -= j * a[j] * counts[k - j]
        a[k] = acc / k
    return a[1:]


def log_z_coeffs(H: Hypergraph, m: int, max_order: int = DEFAULT_MAX_ORDER) -> list[Fraction]:
    """Exact Taylor coefficients of log Z(H; lam) at 0 for orders 1..m."""
    if isinstance(m, bool) or not isinstance(m, int) or m < 0:
        raise InputError("order must be a non-negative integer")
    if m > max_order:
        raise ResourceError("order %d exceeds the cap %d" % (m, max_order))
    counts = enumerate_independent_sets(H, m)
    counts = counts + [0] * (m + 1 - len(counts))
    return formal_log(counts)


def certified_region(H: Hypergraph, lam: complex) -> str | None:
    """Name of the zero-free regime containing lam, or None."""
    delta = H.max_degree
    if abs(lam) < lambda_s(max(delta, 2)):
        return "disk"
    if lam.imag == 0 and 0 < lam.real < lambda_c(max(delta, 3)):
        return "segment"
    return None


@dataclass(frozen=True)
class ApproxResult:
    estimate: complex
    order: int
    empirical_rel_error: float | None
    regime: str

    def to_dict(self) -> dict:
        return {
            "estimate_re": self.estimate.real,
            "estimate_im": self.estimate.imag,
            "order": self.order,
            "empirical_rel_error": self.empirical_rel_error,
        }


def disk_tail_bound(n: int, q: float, m: int) -> float:
    """Bound on sum_{j>m} |a_j lam^j| when every zero has modulus >= |lam| / q.

    With Z = prod_i (1 - lam/zeta_i) over at most n zeros, a_j = -sum_i zeta_i^(-j) / j,
    so the tail is at most n q^(m+1) / ((m+1)(1-q)).
    """
    return n * q ** (m + 1) / ((m + 1) * (1 - q))


def _settled_order(coeffs, lam: complex, threshold: float) -> int | None:
    """First order at which two consecutive terms a_j lam^j are below threshold."""
    small = 0
    for j, a in enumerate(coeffs, start=1):
        small = small + 1 if abs(complex(a) * lam**j) < threshold else 0
        if small == 2:
            return j
    return None


def approx_z(H: Hypergraph, lam, eps: float, max_order: int = DEFAULT_MAX_ORDER) -> ApproxResult:
    """exp(sum_{j<=m} a_j lam^j) with the order m chosen adaptively.

    In the disk regime m is the first order whose tail bound (from the
    zero-free radius) is below eps/2.  On the positive segment, or when
    that bound needs more than max_order terms, m is the first order at
    which two consecutive terms are below eps/2.  Raises Refusal outside the certified regimes
    and NumericError when the cap is reached first.  For n <= 20 the exact
    value is computed and the relative error reported.
    """
    lam = complex(lam)
    if not eps > 0:
        raise InputError("eps must be positive")
    regime = certified_region(H, lam)
    if regime is None:
        raise Refusal("lambda = %r is outside the certified zero-free regimes for max degree %d"
                      % (lam, H.max_degree))
    if lam == 0 or H.n == 0:
        estimate = 1 + 0j
        order = 0
    else:
        order = None
        if regime == "disk":
            q = abs(lam) / float(lambda_s(max(H.max_degree, 2)))
            order = next((m for m in range(1, max_order + 1) if disk_tail_bound(H.n, q, m) < eps / 2), None)
        if order is not None:
            coeffs = log_z_coeffs(H, order, max_order)
        else:
            coeffs = log_z_coeffs(H, max_order, max_order)
            order = _settled_order(coeffs, lam, eps / 2)
            if order is None:
                raise NumericError("log Z series did not settle below eps/2 by order %d" % max_order)
            coeffs = coeffs[:order]
        estimate = cmath.exp(sum(complex(a) * lam**j for j, a in enumerate(coeffs, start=1)))
    empirical = None
    if H.n <= EMPIRICAL_MAX_VERTICES:
        exact = z_eval(H, lam)
        empirical = abs(estimate - exact) / abs(exact)
    return ApproxResult(estimate, order, empirical, regime)
