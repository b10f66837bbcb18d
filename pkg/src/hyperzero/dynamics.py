"""The univariate recursion maps f_{lam,b,d} and their parameter-space geometry.

f_{lam,b,d}(z) = lam * (1 - (z/(1+z))^b)^d is the root-ratio map of the
(b+1)-uniform tree family in which every vertex has d child edges; with
b = 1 it reduces to lam / (1+z)^d.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy import optimize

from .errors import InputError, NumericError, PoleError, TheoremViolation
from .roots import complex_roots
from .sphere import INF


@dataclass(frozen=True)
class DynParams:
    b: int
    d: int
    lam: complex

    def __post_init__(self):
        for name in ("b", "d"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise InputError("%s must be a positive integer, got %r" % (name, v))
        object.__setattr__(self, "lam", complex(self.lam))


@dataclass(frozen=True)
class FixedPointRecord:
    z: complex
    multiplier: complex
    w: complex


# -- maps -------------------------------------------------------------------------


def f_eval(p: DynParams, z):
    """f_{lam,b,d}(z) on the Riemann sphere: f(inf) = 0 and f(-1) = inf."""
    if z is INF:
        return 0j
    z = complex(z)
    if z == -1:
        return 0j if p.lam == 0 else INF
    m = z / (1 + z)
    return p.lam * (1 - m**p.b) ** p.d


def f_array(p: DynParams, z: np.ndarray) -> np.ndarray:
    """Vectorised f with inf for the pole at -1 and 0 for infinite input."""
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        m = z / (1 + z)
        out = p.lam * (1 - m**p.b) ** p.d
    out = np.where(np.isinf(z), 0.0, out)
    out = np.where(z == -1, np.inf if p.lam != 0 else 0.0, out)
    return out


def f_derivative(p: DynParams, z) -> complex:
    """f'(z) = -b d z^(b-1) / ((1+z)((1+z)^b - z^b)) * f(z), written through mu for stability."""
    z = complex(z)
    if z == -1:
        raise PoleError("f has a pole at -1")
    m = z / (1 + z)
    return p.lam * p.d * (1 - m**p.b) ** (p.d - 1) * (-p.b * m ** (p.b - 1)) / (1 + z) ** 2


def F_eval(lam: complex, branches: Sequence[Sequence[complex]]) -> complex:
    """lam * prod_i [1 - prod_j v_ij / (1 + v_ij)] for arbitrary branch sizes."""
    out = complex(lam)
    for branch in branches:
        prod = 1 + 0j
        for v in branch:
            v = complex(v)
            if v == -1:
                raise PoleError("an input equals -1")
            prod *= v / (1 + v)
        out *= 1 - prod
    return out


# -- fixed points -------------------------------------------------------------------


def lambda_of_w(b: int, d: int, w: complex) -> complex:
    """The parameter for which z = w/(1-w) is fixed: lam = (1-w^b)^(-d) w/(1-w)."""
    w = complex(w)
    if w == 1 or w**b == 1:
        raise PoleError("w^b = 1 is a pole of the parametrisation")
    return (1 - w**b) ** (-d) * w / (1 - w)


def multiplier_of_w(b: int, d: int, w: complex) -> complex:
    """Multiplier of that fixed point: -b d w^b (1-w) / (1-w^b)."""
    w = complex(w)
    if w**b == 1:
        raise PoleError("w^b = 1 is a pole of the multiplier")
    return -b * d * w**b * (1 - w) / (1 - w**b)


def fixed_point_polynomial(p: DynParams) -> np.ndarray:
    """Coefficients (lowest first) of lam((1+z)^b - z^b)^d - z(1+z)^(bd), degree bd + 1."""
    one_plus = npoly.polypow([1, 1], p.b)
    zb = np.zeros(p.b + 1)
    zb[-1] = 1
    inner = npoly.polysub(one_plus, zb)
    left = p.lam * npoly.polypow(inner, p.d).astype(complex)
    right = npoly.polymul([0, 1], npoly.polypow([1, 1], p.b * p.d))
    return npoly.polysub(left, right)


def fixed_points(p: DynParams, tol: float = 1e-8) -> list[FixedPointRecord]:
    """All finite fixed points of f with multipliers, from the degree bd+1 polynomial."""
    if p.lam == 0:
        return [FixedPointRecord(0j, 0j, 0j)]
    roots = complex_roots(fixed_point_polynomial(p))
    out = []
    for z in roots:
        z = complex(z)
        fz = f_eval(p, z)
        if fz is INF or abs(fz - z) > tol * max(1.0, abs(z)):
            raise NumericError("fixed point residual too large", z=z, residual=None if fz is INF else abs(fz - z))
        out.append(FixedPointRecord(z, f_derivative(p, z), z / (1 + z)))
    out.sort(key=lambda r: (abs(r.z), r.z.real, r.z.imag))
    return out


# -- parameters with an indifferent fixed point --------------------------------------------


@dataclass(frozen=True)
class IndifferentPoint:
    theta: float
    branch: int
    w: complex
    lam: complex


def indifferent_w(b: int, d: int, alpha: complex) -> np.ndarray:
    """Solutions w != 1 of -b d w^b (1-w) = alpha (1 - w^b).

    w = 1 always solves the cleared equation; dividing it out leaves
    b d w^b + alpha (1 + w + ... + w^(b-1)) = 0 of degree b.
    """
    coeffs = np.full(b + 1, complex(alpha))
    coeffs[-1] = b * d
    return complex_roots(coeffs)


def indifferent_curve(b: int, d: int, thetas: Sequence[float]) -> list[IndifferentPoint]:
    """Parameters lam whose map has a fixed point of multiplier e^{i theta}.

    Each theta gives b points; consecutive thetas are matched so that each
    branch traces a continuous curve.  Rows come out branch by branch.
    """
    from scipy.optimize import linear_sum_assignment

    tracks: list[np.ndarray] = []
    previous = None
    for theta in thetas:
        w = indifferent_w(b, d, cmath.exp(1j * theta))
        if previous is not None:
            cost = np.abs(previous[:, None] - w[None, :])
            _, cols = linear_sum_assignment(cost)
            w = w[cols]
        tracks.append(w)
        previous = w
    out = []
    for branch in range(b):
        for theta, w in zip(thetas, tracks):
            wb = complex(w[branch])
            if abs(wb**b - 1) < 1e-14:
                continue
            out.append(IndifferentPoint(float(theta), branch, wb, lambda_of_w(b, d, wb)))
    return out


@dataclass(frozen=True)
class RhoResult:
    rho: float
    w: complex
    lam: complex


def parabolic_parameters(b: int, d: int) -> list[RhoResult]:
    """Every lam whose map has a fixed point with multiplier exactly 1, by increasing |lam|."""
    if b < 1 or d < 1:
        raise InputError("b and d must be positive")
    out = []
    for w in indifferent_w(b, d, 1.0):
        w = complex(w)
        if abs(w**b - 1) < 1e-14:
            continue
        lam = lambda_of_w(b, d, w)
        out.append(RhoResult(abs(lam), w, lam))
    out.sort(key=lambda r: (round(r.rho, 12), -r.lam.imag, r.lam.real))
    return out


def rho(b: int, d: int) -> RhoResult:
    """Smallest |lam| with a parabolic (multiplier 1) fixed point."""
    found = parabolic_parameters(b, d)
    if not found:
        raise NumericError("no admissible parabolic parameter")
    return found[0]


def rho_asymptotic(b: int, d: int) -> float:
    """Large-d behaviour (e b d)^(-1/b) of rho."""
    return (math.e * b * d) ** (-1.0 / b)


# -- critical orbits and parameter orbits ------------------------------------------------


@dataclass(frozen=True)
class CriticalOrbit:
    point: object
    steps: int
    orbit: tuple


def critical_points(p: DynParams) -> list:
    """0, -1, infinity and the points with (z/(1+z))^b = 1 other than infinity."""
    pts: list = [0j, -1 + 0j, INF]
    for k in range(1, p.b):
        zeta = cmath.exp(2j * math.pi * k / p.b)
        pts.append(zeta / (1 - zeta))
    return pts


def _close(a, b, tol: float) -> bool:
    if a is INF or b is INF:
        return a is b
    return abs(a - b) <= tol * max(1.0, abs(b))


def critical_orbit_check(p: DynParams, tol: float = 1e-9) -> list[CriticalOrbit]:
    """Every critical point reaches lam after 1, 2 or 3 steps."""
    out = []
    for c in critical_points(p):
        orbit = [c]
        z = c
        for n in range(1, 4):
            z = f_eval(p, z)
            if z is not INF and abs(z) < tol:
                z = 0j  # snap the image of a root-of-unity point, lost in rounding
            orbit.append(z)
            if _close(z, p.lam, tol):
                out.append(CriticalOrbit(c, n, tuple(orbit)))
                break
        else:
            raise TheoremViolation("critical point does not reach lambda in 3 steps", point=str(c))
    return out


@dataclass(frozen=True)
class Orbit:
    points: tuple
    minus_one_hits: tuple


def orbit_from_lambda(p: DynParams, steps: int, tol: float = 1e-12) -> Orbit:
    """lam, f(lam), ..., f^steps(lam); indices where the orbit meets -1 are flagged."""
    z = p.lam
    pts = [z]
    hits = []
    for n in range(steps):
        if z is not INF and abs(z + 1) <= tol:
            hits.append(n)
        z = f_eval(p, z)
        pts.append(z)
    if z is not INF and abs(z + 1) <= tol:
        hits.append(steps)
    return Orbit(tuple(pts), tuple(hits))


# -- the maximal invariant disk -------------------------------------------------------------


@dataclass(frozen=True)
class DiskArgmax:
    points: tuple
    value: float


def disk_argmax(c: float, r: float, n: int, samples: int = 4096) -> DiskArgmax:
    """Maximisers of |z^n - 1| over the closed disk with real centre c < 0 and radius r > |c|.

    The maximum is attained on the boundary, either only at z0 = c - r or
    at a conjugate pair off the real axis; for odd n always at z0.
    """
    if not (c < 0 and r > abs(c)):
        raise InputError("need a negative centre with 0 inside the disk")

    def value(t):
        return abs((c + r * cmath.exp(1j * t)) ** n - 1)

    t = np.linspace(0, math.pi, samples)
    vals = np.abs((c + r * np.exp(1j * t)) ** n - 1)
    i = int(np.argmax(vals))
    lo, hi = t[max(i - 1, 0)], t[min(i + 1, samples - 1)]
    res = optimize.minimize_scalar(lambda s: -value(s), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-13})
    t_best, v_best = (res.x, -res.fun) if -res.fun >= vals[i] else (t[i], vals[i])
    z0 = c - r
    v0 = abs(z0**n - 1)
    if v0 >= v_best * (1 - 1e-12):
        return DiskArgmax((complex(z0),), float(v0))
    if n % 2 == 1:
        raise TheoremViolation("odd exponent with a maximiser off the real axis", n=n)
    z = c + r * cmath.exp(1j * t_best)
    if abs(z.imag) < 1e-12:
        raise TheoremViolation("maximiser on the positive real axis", n=n)
    return DiskArgmax((z, z.conjugate()), float(v_best))


@dataclass(frozen=True)
class InvariantDisk:
    radius: float
    argmax: complex
    derivative_modulus: float


def _max_modulus_on_circle(p: DynParams, R: float) -> tuple[float, complex]:
    """max_{|z| <= R} |f(z)| via the image disk mu(B_R) and the exponent b."""
    c = -R * R / (1 - R * R)
    r = R / (1 - R * R)
    best = disk_argmax(c, r, p.b)
    w = best.points[0]
    return abs(p.lam) * best.value**p.d, w / (1 - w)


def maximal_invariant_disk(b: int, d: int, lam: complex, tol: float = 1e-10,
                           grid: int = 400) -> InvariantDisk | None:
    """Largest R < 1 with f_{lam,b,d}(B_R) inside B_R, or None.

    The feasible set is located on a grid (with a local minimisation of
    max|f| - R when the grid misses it) and its right end is then found by
    bisection.
    """
    p = DynParams(b, d, lam)
    a = abs(p.lam)
    if a >= 1:
        return None

    def gap(R):
        return _max_modulus_on_circle(p, R)[0] - R

    Rs = a + (1 - a) * np.arange(1, grid) / grid
    gaps = np.array([gap(R) for R in Rs])
    feasible = np.flatnonzero(gaps <= tol)
    if len(feasible):
        k = int(feasible[-1])
        lo = Rs[k]
    else:
        k = int(np.argmin(gaps))
        left = Rs[k - 1] if k > 0 else a
        right = Rs[k + 1] if k + 1 < len(Rs) else 1 - 1e-12
        res = optimize.minimize_scalar(gap, bounds=(left, right), method="bounded",
                                       options={"xatol": 1e-14})
        if res.fun > tol:
            return None
        lo = float(res.x)
    hi = Rs[k + 1] if k + 1 < len(Rs) and gaps[k + 1] > tol else 1 - 1e-12
    if gap(hi) <= tol:
        lo = hi
    else:
        for _ in range(200):
            mid = (lo + hi) / 2
            if gap(mid) <= tol:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-13:
                break
    _, z = _max_modulus_on_circle(p, lo)
    return InvariantDisk(float(lo), complex(z), float(abs(f_derivative(p, z))))


# -- multivariate disk invariance -------------------------------------------------------


@dataclass(frozen=True)
class DiskInvarianceReport:
    delta: int
    samples: int
    max_abs_F: float
    max_abs_mu: float
    bound: float
    passed: bool

    def to_dict(self) -> dict:
        return {"delta": self.delta, "samples": self.samples, "max_abs_F": self.max_abs_F,
                "max_abs_mu": self.max_abs_mu, "bound": self.bound, "pass": self.passed}


def _disk_point(rng: np.random.Generator, radius: float) -> complex:
    # a quarter of the draws sit on the boundary, where the bound is tight
    r = radius if rng.random() < 0.25 else radius * math.sqrt(rng.random())
    return r * cmath.exp(2j * math.pi * rng.random())


def disk_invariance_check(delta: int, samples: int = 10_000, rng: np.random.Generator | None = None,
                          max_branch: int = 3, tol: float = 1e-12) -> DiskInvarianceReport:
    """Does F_lam map B_{1/delta} into itself when |lam| = lambda_s(delta)?

    Each sample draws a phase for lam, up to delta - 1 branches of random
    size 1..max_branch, and entries in the closed disk of radius 1/delta.
    The chain of estimates gives |v/(1+v)| <= 1/(delta-1) per entry and
    |F| <= lambda_s(delta) (1 + 1/(delta-1))^(delta-1) = 1/delta.
    """
    from .regions import lambda_s

    if isinstance(delta, bool) or not isinstance(delta, int) or delta < 2:
        raise InputError("delta must be an integer >= 2")
    rng = rng if rng is not None else np.random.default_rng(0)
    radius = 1.0 / delta
    lam_mod = float(lambda_s(delta))
    worst_f = 0.0
    worst_mu = 0.0
    for _ in range(samples):
        lam = lam_mod * cmath.exp(2j * math.pi * rng.random())
        branches = []
        for _ in range(int(rng.integers(1, delta))):
            branch = [_disk_point(rng, radius) for _ in range(int(rng.integers(1, max_branch + 1)))]
            worst_mu = max(worst_mu, max(abs(v / (1 + v)) for v in branch))
            branches.append(branch)
        worst_f = max(worst_f, abs(F_eval(lam, branches)))
    mu_bound = 1.0 / (delta - 1) if delta > 2 else 1.0
    passed = worst_f <= radius + tol and worst_mu <= mu_bound + tol
    return DiskInvarianceReport(delta, samples, worst_f, worst_mu, radius, passed)
