"""Zero-free radii, planar regions, and numerical certification checks.

Regions expose `margin(z)`: the distance from z to the boundary, positive
inside and non-positive outside (for convex regions built from half-planes
and disks this is exact inside and a lower bound on the distance outside).
Membership is `margin >= -tol`, evaluated from the defining inequalities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Protocol

import numpy as np
from scipy import optimize

from .errors import InputError, PoleError
from .sphere import INF

DEFAULT_CAP = 1e3
MEMBERSHIP_TOL = 1e-12


# -- radii ------------------------------------------------------------------------


def _check_int(name: str, value, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise InputError("%s must be an integer >= %d, got %r" % (name, minimum, value))
    return value


def lambda_s(delta: int) -> Fraction:
    """(D-1)^(D-1) / D^D, the radius of the zero-free disk for max degree D."""
    delta = _check_int("delta", delta, 2)
    return Fraction((delta - 1) ** (delta - 1), delta ** delta)


def lambda_c(delta: int) -> Fraction:
    """(D-1)^(D-1) / (D-2)^D, the end of the zero-free interval on the positive axis."""
    delta = _check_int("delta", delta, 3)
    return Fraction((delta - 1) ** (delta - 1), (delta - 2) ** delta)


# -- the Moebius map z -> z / (1 + z) ----------------------------------------------


def mu(z):
    """z / (1 + z) on the Riemann sphere."""
    if z is INF:
        return 1 + 0j
    z = complex(z)
    if z == -1:
        return INF
    return z / (1 + z)


def mu_inv(w):
    """w / (1 - w), the inverse of `mu`."""
    if w is INF:
        return -1 + 0j
    w = complex(w)
    if w == 1:
        return INF
    return w / (1 - w)


def mu_array(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = z / (1 + z)
    out[z == -1] = np.inf
    out[np.isinf(z)] = 1.0
    return out


def mu_inv_array(w: np.ndarray) -> np.ndarray:
    w = np.asarray(w, dtype=complex)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = w / (1 - w)
    out[w == 1] = np.inf
    out[np.isinf(w)] = -1.0
    return out


# -- regions ----------------------------------------------------------------------


class Region(Protocol):
    def margin(self, z: np.ndarray) -> np.ndarray: ...

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray: ...


def _ray_margin(z, vertex, angle):
    """Margins of the two half-planes whose intersection is the cone |Arg(z - vertex)| <= angle."""
    w = z - vertex
    return -(w * np.exp(-1j * angle)).imag, (w * np.exp(1j * angle)).imag


def _log_ray(start: complex, direction: complex, count: int, cap: float) -> np.ndarray:
    """Points start + t*direction with |point| growing geometrically up to `cap`."""
    if count <= 0:
        return np.zeros(0, dtype=complex)
    length = max(cap - abs(start), 1.0)
    t = np.geomspace(1e-6 * length, length, count)
    return start + t * direction


def _halves(count: int) -> tuple[int, int]:
    return count - count // 2, count // 2


def _check_eps(eps: float) -> None:
    if not 0 < eps < math.pi / 2:
        raise InputError("angle must lie in (0, pi/2), got %r" % (eps,))


@dataclass(frozen=True)
class Disk:
    center: complex
    radius: float

    def margin(self, z):
        return self.radius - np.abs(np.asarray(z, dtype=complex) - self.center)

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        k = np.arange(m)
        pts = self.center + self.radius * np.exp(2j * np.pi * k / m)
        # snap the quarter points so that the unit circle gives exactly 1, i, -1, -i
        for q in range(4):
            if (q * m) % 4 == 0:
                pts[q * m // 4] = self.center + self.radius * [1, 1j, -1, -1j][q]
        return pts


@dataclass(frozen=True)
class Cone:
    """C(x, eps) = {|Arg(z - x)| <= eps} together with x."""

    vertex: complex
    eps: float

    def margin(self, z):
        lo, hi = _ray_margin(np.asarray(z, dtype=complex), self.vertex, self.eps)
        return np.minimum(lo, hi) if self.eps <= math.pi / 2 else np.maximum(lo, hi)

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        n_up, n_low = _halves(m - 1)
        upper = _log_ray(self.vertex, np.exp(1j * self.eps), n_up, cap)
        lower = _log_ray(self.vertex, np.exp(-1j * self.eps), n_low, cap)
        return np.concatenate([lower[::-1], [self.vertex], upper])


@dataclass(frozen=True)
class HalfPlane:
    """H(y, eps) = y + e^{-i eps} * (closed upper half-plane)."""

    y: complex
    eps: float

    def margin(self, z):
        return ((np.asarray(z, dtype=complex) - self.y) * np.exp(1j * self.eps)).imag

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        half = m // 2
        direction = np.exp(-1j * self.eps)
        ahead = _log_ray(self.y, direction, half, cap)
        behind = _log_ray(self.y, -direction, m - half - 1, cap)
        return np.concatenate([behind[::-1], [self.y], ahead])


@dataclass(frozen=True)
class RegionA:
    """A(x, x0, eps): the cone C(x, eps) cut by C(-1, eps~) so that the corners sit at Re = x0."""

    x: float
    x0: float
    eps: float

    def __post_init__(self):
        if not -1 < self.x < self.x0:
            raise InputError("region A needs -1 < x < x0")
        _check_eps(self.eps)

    @property
    def eps_tilde(self) -> float:
        return math.atan((self.x0 - self.x) / (self.x0 + 1) * math.tan(self.eps))

    @property
    def corner(self) -> complex:
        return complex(self.x0, (self.x0 - self.x) * math.tan(self.eps))

    def margin(self, z):
        z = np.asarray(z, dtype=complex)
        a, b = _ray_margin(z, self.x, self.eps)
        c, d = _ray_margin(z, -1.0, self.eps_tilde)
        return np.minimum(np.minimum(a, b), np.minimum(c, d))

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        corner = self.corner
        direction = np.exp(1j * self.eps_tilde)

        def upper(count):
            n_seg, n_ray = _halves(count)
            seg = self.x + (corner - self.x) * np.linspace(0, 1, n_seg + 1)[1:]
            return np.concatenate([seg, _log_ray(corner, direction, n_ray, cap)])

        n_up, n_low = _halves(m - 1)
        return np.concatenate([np.conj(upper(n_low))[::-1], [self.x], upper(n_up)])


def _lens_circle(y: float, eps: float) -> tuple[float, float, float]:
    """(mid, k, radius): the upper arc lies on the circle centered at mid - i k."""
    half = (1 - y) / 2
    return (1 + y) / 2, half / math.tan(eps), half / math.sin(eps)


def _arc(y: float, eps: float, x_end: float, count: int) -> np.ndarray:
    """Upper arc of D(y, eps) from y to the point with real part x_end."""
    mid, k, radius = _lens_circle(y, eps)
    center = complex(mid, -k)
    start = math.atan2(k, y - mid)
    end_point = complex(x_end, math.sqrt(max(radius**2 - (x_end - mid) ** 2, 0.0)) - k)
    stop = math.atan2((end_point - center).imag, (end_point - center).real)
    theta = np.linspace(start, stop, count)
    pts = center + radius * np.exp(1j * theta)
    pts[0] = y
    pts[-1] = end_point
    return pts


@dataclass(frozen=True)
class LensD:
    """D(y, eps): between the arc from y to 1 with angle eps at y and its conjugate."""

    y: float
    eps: float

    def __post_init__(self):
        if not self.y < 1:
            raise InputError("lens needs y < 1")
        _check_eps(self.eps)

    def margin(self, z):
        z = np.asarray(z, dtype=complex)
        mid, k, radius = _lens_circle(self.y, self.eps)
        return np.minimum(radius - np.abs(z - complex(mid, -k)), radius - np.abs(z - complex(mid, k)))

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        n_up, n_low = _halves(m - 2)
        upper = _arc(self.y, self.eps, 1.0, n_up + 2)
        lower = np.conj(_arc(self.y, self.eps, 1.0, n_low + 2)[1:-1])[::-1]
        return np.concatenate([upper, lower])


@dataclass(frozen=True)
class LensB:
    """B(y, y0, eps) = D(y, eps) cut by the cone at 1 through the arc point with real part y0."""

    y: float
    y0: float
    eps: float

    def __post_init__(self):
        if not self.y < self.y0 < 1:
            raise InputError("lens B needs y < y0 < 1")
        _check_eps(self.eps)

    @property
    def corner(self) -> complex:
        mid, k, radius = _lens_circle(self.y, self.eps)
        return complex(self.y0, math.sqrt(radius**2 - (self.y0 - mid) ** 2) - k)

    @property
    def eta_tilde(self) -> float:
        c = self.corner
        return math.atan2(c.imag, 1 - c.real)

    def margin(self, z):
        z = np.asarray(z, dtype=complex)
        lens = LensD(self.y, self.eps).margin(z)
        a, b = _ray_margin(1 - z, 0.0, self.eta_tilde)
        return np.minimum(lens, np.minimum(a, b))

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        corner = self.corner

        def upper(count):
            n_arc, n_seg = _halves(count)
            arc = _arc(self.y, self.eps, self.y0, n_arc + 1)[1:]
            seg = corner + (1 - corner) * np.linspace(0, 1, n_seg + 1)[1:]
            return np.concatenate([arc, seg])

        n_up, n_low = _halves(m - 1)
        up = upper(n_up)
        low = np.conj(upper(n_low + 1)[:-1])[::-1]
        return np.concatenate([[self.y], up, low])


@dataclass(frozen=True)
class MuImage:
    """mu(R) for a region R, with membership pulled back through mu^-1."""

    base: Region

    def margin(self, w):
        w = np.asarray(w, dtype=complex)
        z = mu_inv_array(w)
        with np.errstate(invalid="ignore", over="ignore"):
            scale = np.abs(1 - w) ** 2  # |d mu / dz| at z = mu^-1(w)
            out = self.base.margin(z) * scale
        return np.where(np.isfinite(out), out, 0.0)

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        return mu_array(self.base.boundary(m, cap))


@dataclass(frozen=True)
class Polygon:
    """Closed polygon with the given vertices (in order)."""

    vertices: tuple

    def margin(self, z):
        scalar = np.ndim(z) == 0
        z = np.atleast_1d(np.asarray(z, dtype=complex))
        v = np.asarray(self.vertices, dtype=complex)
        a, b = v, np.roll(v, -1)
        ab = b - a
        t = np.clip(((z[:, None] - a) * np.conj(ab)).real / np.abs(ab) ** 2, 0, 1)
        dist = np.abs(z[:, None] - (a + t * ab)).min(axis=1)
        # even-odd rule for inside
        ya, yb = a.imag, b.imag
        crosses = ((ya <= z.imag[:, None]) != (yb <= z.imag[:, None]))
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = a.real + (z.imag[:, None] - ya) * (b.real - a.real) / (yb - ya)
        inside = (crosses & (z.real[:, None] < xint)).sum(axis=1) % 2 == 1
        out = np.where(inside, dist, -dist)
        return out[0] if scalar else out

    def boundary(self, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
        v = np.asarray(self.vertices, dtype=complex)
        counts = [m // len(v) + (1 if i < m % len(v) else 0) for i in range(len(v))]
        pts = [a + (b - a) * np.arange(c) / max(c, 1) for a, b, c in zip(v, np.roll(v, -1), counts)]
        return np.concatenate(pts)


REGION_KINDS = {
    "disk": Disk,
    "cone": Cone,
    "halfplane": HalfPlane,
    "regionA": RegionA,
    "lensD": LensD,
    "lensB": LensB,
    "muimage": MuImage,
    "polygon": Polygon,
}


def contains(region: Region, z, tol: float = 0.0):
    """Membership by the defining inequalities; vectorised over arrays."""
    result = region.margin(z) >= -tol
    return bool(result) if np.ndim(result) == 0 else result


def boundary_samples(region: Region, m: int, cap: float = DEFAULT_CAP) -> np.ndarray:
    """m points along the boundary, corners included; unbounded parts stop at modulus `cap`."""
    if m < 4:
        raise InputError("need at least 4 boundary samples")
    return np.asarray(region.boundary(m, cap), dtype=complex)


# -- certification checks ------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    margin: float
    samples: int

    def to_dict(self) -> dict:
        return {"pass": self.passed, "margin": self.margin, "samples": self.samples}


def _pairwise_min(values: np.ndarray, combine, region: Region, block: int = 256,
                  diagonal: bool = True) -> float:
    worst = math.inf
    n = len(values)
    for start in range(0, n, block):
        rows = values[start:start + block]
        cand = combine(rows[:, None], values[None, :])
        if not diagonal:
            idx = np.arange(len(rows))
            cand[idx, start + idx] = np.nan
        cand = cand.ravel()
        cand = cand[np.isfinite(cand)]
        if len(cand):
            worst = min(worst, float(np.min(region.margin(cand))))
    return worst


def check_log_convexity(region: Region, m: int = 512, shift: complex = 1.0,
                        tol: float = MEMBERSHIP_TOL, cap: float = DEFAULT_CAP) -> CheckReport:
    """Is shift + region log-convex?  Tests the geometric mean of every pair of boundary samples."""
    pts = boundary_samples(region, m, cap) + shift
    if np.any((pts.real <= 0) & (np.abs(pts.imag) <= 1e-15)):
        raise InputError("the shifted region meets the non-positive real axis")
    logs = np.log(pts)
    # a point paired with itself is its own geometric mean and carries no information
    margin = _pairwise_min(logs, lambda a, b: np.exp((a + b) / 2) - shift, region, diagonal=False)
    return CheckReport(margin >= -tol, margin, m)


def check_semigroup(region: Region, m: int = 512, tol: float = MEMBERSHIP_TOL,
                    cap: float = DEFAULT_CAP) -> CheckReport:
    """Is the region closed under multiplication?  Tests all products of boundary pairs."""
    pts = boundary_samples(region, m, cap)
    margin = _pairwise_min(pts, lambda a, b: a * b, region)
    return CheckReport(margin >= -tol, margin, m)


def check_forward_invariance(region: Region, params, m: int = 512, cap: float = DEFAULT_CAP) -> CheckReport:
    """Do the images of boundary samples under f_{lam,b,d} land strictly inside?"""
    from .dynamics import f_array

    pts = boundary_samples(region, m, cap)
    images = f_array(params, pts)
    if not np.all(np.isfinite(images)):
        return CheckReport(False, -math.inf, m)
    margin = float(np.min(region.margin(images)))
    return CheckReport(margin > 0, margin, m)


def region_a_for_degree(d: int, x0: float, eps: float) -> RegionA:
    """A(-1/(d+1), x0, eps)."""
    return RegionA(-1.0 / (d + 1), x0, eps)


def mu_image_lens(region: RegionA) -> LensB:
    """The lens B(mu(x), Re mu(I), eps) that equals mu(A(x, x0, eps)) minus the point 1."""
    y = region.x / (1 + region.x)
    return LensB(y, mu(region.corner).real, region.eps)


# -- cone maps and the limit map -------------------------------------------------------


def limit_map_deviation(big_lambda: float, d: int, grid: int = 101) -> float:
    """max |Lam / (1 + Z/d)^d - Lam e^{-Z}| over a grid on [0, 2] x [-1, 1]."""
    re = np.linspace(0, 2, grid)
    im = np.linspace(-1, 1, grid)
    Z = re[None, :] + 1j * im[:, None]
    G = big_lambda / (1 + Z / d) ** d
    E = big_lambda * np.exp(-Z)
    return float(np.max(np.abs(G - E)))


def limit_map_check(big_lambda: float, degrees=(10, 100, 1000), grid: int = 101) -> list[tuple[int, float]]:
    return [(d, limit_map_deviation(big_lambda, d, grid)) for d in degrees]


# -- the two low-degree curves ---------------------------------------------------------

_B_CURVES = {
    # d: (numerator constant, linear coefficient, slope, offset, power)
    2: (162, 9, 7, 2, 3),
    3: (1536, 64, 5, 3, 4),
}


def b_curve(d: int, lam: float, t):
    """B_2(lam; t) = -162t / (9(7t+2) + (7t+2)^3/lam),  B_3(lam; t) = -1536t / (64(5t+3) + (5t+3)^4/lam)."""
    if d not in _B_CURVES:
        raise InputError("b-curves exist for d in {2, 3}")
    if lam <= 0:
        raise InputError("lambda must be positive")
    c, a, s, o, k = _B_CURVES[d]
    u = s * np.asarray(t, dtype=float) + o
    return -c * np.asarray(t, dtype=float) / (a * u + u**k / lam)


def _b_curve_slope_sign(d: int, lam: float, t: float) -> float:
    """D(t) - t D'(t); B' has the opposite sign."""
    c, a, s, o, k = _B_CURVES[d]
    u = s * t + o
    D = a * u + u**k / lam
    dD = a * s + k * s * u ** (k - 1) / lam
    return D - t * dD


@dataclass(frozen=True)
class BCurveMinimum:
    d: int
    lam: float
    t_min: float
    value: float


def b_curve_minimum(d: int, lam: float) -> BCurveMinimum:
    """Minimum of B_d(lam; .) on [0, 1].

    Golden-section search brackets the minimiser, then the zero of the
    derivative numerator is pinned down by Brent's method.
    """
    if d not in _B_CURVES:
        raise InputError("b-curves exist for d in {2, 3}")
    t_golden = optimize.minimize_scalar(lambda t: float(b_curve(d, lam, t)), bounds=(0, 1),
                                        method="bounded", options={"xatol": 1e-6}).x
    g0 = _b_curve_slope_sign(d, lam, 0.0)
    g1 = _b_curve_slope_sign(d, lam, 1.0)
    if g0 > 0 > g1:
        t_min = optimize.brentq(lambda t: _b_curve_slope_sign(d, lam, t), 0.0, 1.0, xtol=1e-14)
    else:
        t_min = float(t_golden) if 0 < t_golden < 1 else (1.0 if g1 >= 0 else 0.0)
    return BCurveMinimum(d, lam, float(t_min), float(b_curve(d, lam, t_min)))


# -- closing inequalities for large degree ----------------------------------------------


def _sqrt_interval(d: int, digits: int = 40) -> tuple[Fraction, Fraction]:
    r = math.isqrt(d)
    if r * r == d:
        return Fraction(r), Fraction(r)
    scale = 10**digits
    lo = math.isqrt(d * scale * scale)
    return Fraction(lo, scale), Fraction(lo + 1, scale)


@dataclass(frozen=True)
class LargeDegreeCheck:
    d: int
    left: Fraction
    lower: Fraction
    right_interval: tuple[Fraction, Fraction]
    holds: bool
    crossing: float

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "left": self.left,
            "lower": self.lower,
            "right_lo": self.right_interval[0],
            "right_hi": self.right_interval[1],
            "holds": self.holds,
            "crossing": self.crossing,
        }


def sokal_crossing() -> float:
    """Largest real d with (d/(d-1)^2) e - 1/(d+1) = 1/(sqrt d - 1).

    With s = sqrt(d) and denominators cleared this is the polynomial
    e s^2 (s^2+1) - (s^2-1)^2 - (s-1)(s+1)^2 (s^2+1) = 0.
    """
    s = np.polynomial.Polynomial([0, 1])
    poly = math.e * s**2 * (s**2 + 1) - (s**2 - 1) ** 2 - (s - 1) * (s + 1) ** 2 * (s**2 + 1)
    real = [r.real for r in poly.roots() if abs(r.imag) < 1e-9 and r.real > 1]
    return max(real) ** 2


def large_degree_inequalities(d: int) -> LargeDegreeCheck:
    """Exact check of lambda_c(d+1) - 1/(d+1) < 1/(sqrt d - 1) and of 1/(d^2-1) < 1/(sqrt d - 1).

    sqrt(d) is bracketed by rationals, so `holds` is only True when it is
    certified.
    """
    d = _check_int("d", d, 2)
    left = lambda_c(d + 1) - Fraction(1, d + 1)
    lower = Fraction(1, d * d - 1)
    lo, hi = _sqrt_interval(d)
    right = (1 / (hi - 1), 1 / (lo - 1))
    holds = left < right[0] and lower < right[0]
    return LargeDegreeCheck(d, left, lower, right, holds, sokal_crossing())
