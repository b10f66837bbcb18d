"""Aberth-Ehrlich simultaneous root finding.

The iteration only needs the Newton quotient p(z)/p'(z) at the current
approximations, so the same driver serves dense float polynomials, exact
integer polynomials with huge coefficients (evaluated with an exponent-
tracking Horner scheme, then polished in mpmath), and functions such as
tree partition functions whose logarithmic derivative is cheaper to get
from a recursion than from coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .errors import NumericError
from .poly import Polynomial

_BLOCK = 1024


def _aberth_sums(z: np.ndarray, idx: np.ndarray) -> np.ndarray:
    """sum_{j != i} 1 / (z_i - z_j) for i in idx."""
    out = np.empty(len(idx), dtype=complex)
    for start in range(0, len(idx), _BLOCK):
        rows = idx[start:start + _BLOCK]
        diff = z[rows, None] - z[None, :]
        diff[np.arange(len(rows)), rows] = 1.0
        inv = 1.0 / diff
        inv[np.arange(len(rows)), rows] = 0.0
        out[start:start + _BLOCK] = inv.sum(axis=1)
    return out


def aberth(
    newton: Callable[[np.ndarray], np.ndarray],
    z0: np.ndarray,
    tol: float = 4e-16,
    max_iter: int = 1000,
) -> tuple[np.ndarray, bool, int]:
    """Run Aberth-Ehrlich from z0.

    `newton(z)` returns p(z)/p'(z) elementwise.  Roots whose correction
    falls below tol * |z| are frozen.  Returns (roots, converged, iterations).
    """
    z = np.array(z0, dtype=complex)
    active = np.ones(len(z), dtype=bool)
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.flatnonzero(active)
        if len(idx) == 0:
            return z, True, it - 1
        n_corr = newton(z[idx])
        sums = _aberth_sums(z, idx)
        step = n_corr / (1 - n_corr * sums)
        bad = ~np.isfinite(step)
        step[bad] = 0.0
        z[idx] -= step
        done = (np.abs(step) <= tol * np.maximum(np.abs(z[idx]), 1e-300)) & ~bad
        active[idx[done]] = False
    return z, not active.any(), it


def initial_circle(n: int, radius: float, center: complex = 0.0) -> np.ndarray:
    k = np.arange(n)
    return center + radius * np.exp(1j * (2 * np.pi * k / n + 0.4))


# -- float coefficient polynomials ---------------------------------------------------


def _horner_newton(coeffs: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    rev = coeffs[::-1]

    def newton(z):
        p = np.full(len(z), rev[0], dtype=complex)
        dp = np.zeros(len(z), dtype=complex)
        for c in rev[1:]:
            dp = dp * z + p
            p = p * z + c
        return p / dp

    return newton


def complex_roots(coeffs, tol: float = 4e-16) -> np.ndarray:
    """All roots of sum_k coeffs[k] z^k (lowest degree first, complex floats)."""
    c = np.trim_zeros(np.asarray(coeffs, dtype=complex), "b")
    if len(c) == 0:
        raise NumericError("the zero polynomial has no isolated roots")
    zeros_at_origin = len(c) - len(np.trim_zeros(c, "f"))
    c = c[zeros_at_origin:]
    n = len(c) - 1
    if n == 0:
        return np.zeros(zeros_at_origin, dtype=complex)
    radius = abs(c[0] / c[-1]) ** (1.0 / n)
    z, ok, _ = aberth(_horner_newton(c), initial_circle(n, radius), tol=tol, max_iter=500)
    if not ok:
        # companion matrix fallback, then a short Aberth polish
        z = np.roots(c[::-1])
        z, _, _ = aberth(_horner_newton(c), z, tol=tol, max_iter=50)
    return np.concatenate([np.zeros(zeros_at_origin, dtype=complex), z])


# -- exact polynomials -----------------------------------------------------------------


def _split(c) -> tuple[float, int]:
    """c = m * 2**e with 0.5 <= |m| < 1, for int or Fraction c."""
    if c == 0:
        return 0.0, 0
    c = Fraction(c)
    num, den = c.numerator, c.denominator
    sn = max(num.bit_length() - 64, 0) if num > 0 else max((-num).bit_length() - 64, 0)
    sd = max(den.bit_length() - 64, 0)
    m, e = math.frexp((num >> sn if num > 0 else -((-num) >> sn)) / (den >> sd))
    return m, e + sn - sd


def _scaled_newton(P: Polynomial) -> Callable[[np.ndarray], np.ndarray]:
    parts = [_split(c) for c in reversed(P.coeffs)]
    mant = np.array([m for m, _ in parts])
    expo = np.array([e for _, e in parts], dtype=np.int64)

    def cldexp(x, k):
        return np.ldexp(x.real, k) + 1j * np.ldexp(x.imag, k)

    def newton(z):
        a = np.full(len(z), mant[0], dtype=complex)
        b = np.zeros(len(z), dtype=complex)
        E = np.full(len(z), expo[0], dtype=np.int64)
        for m, e in zip(mant[1:], expo[1:]):
            b = b * z + a
            a = a * z
            new_e = np.maximum(E, e)
            a = cldexp(a, E - new_e) + np.ldexp(m, e - new_e)
            b = cldexp(b, E - new_e)
            E = new_e
            _, shift = np.frexp(np.maximum(np.abs(a), np.abs(b)))
            a = cldexp(a, -shift)
            b = cldexp(b, -shift)
            E = E + shift
        return a / b

    return newton


def _mp_aberth(P: Polynomial, z: np.ndarray, prec: int, max_iter: int = 60) -> list:
    # the output is rounded to doubles, so corrections below 2^-64 are not chased
    with mpmath.workprec(prec):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
                  for c in reversed(P.coeffs)]
        roots = [mpmath.mpc(complex(x)) for x in z]
        n = len(roots)
        target = mpmath.mpf(2) ** -64
        active = set(range(n))
        for _ in range(max_iter):
            if not active:
                break
            for i in sorted(active):
                zi = roots[i]
                p = coeffs[0]
                dp = mpmath.mpf(0)
                for c in coeffs[1:]:
                    dp = dp * zi + p
                    p = p * zi + c
                if dp == 0:
                    active.discard(i)
                    continue
                ratio = p / dp
                s = mpmath.mpf(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (zi - roots[j])
                step = ratio / (1 - ratio * s)
                roots[i] = zi - step
                if abs(step) <= target * max(abs(roots[i]), target):
                    active.discard(i)
        return roots


def _residuals(P: Polynomial, roots) -> np.ndarray:
    """|p(z)| / sum_k |c_k| |z|^k evaluated in mpmath, a backward error per root."""
    out = []
    with mpmath.workprec(256):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c)
                  for c in reversed(P.coeffs)]
        for z in roots:
            z = mpmath.mpc(z)
            p = mpmath.mpf(0)
            scale = mpmath.mpf(0)
            az = abs(z)
            for c in coeffs:
                p = p * z + c
                scale = scale * az + abs(c)
            out.append(float(abs(p) / scale) if scale else 0.0)
    return np.array(out)


def clusters(roots, tol: float) -> list[tuple[complex, int]]:
    """Group roots closer than tol (single linkage); returns (mean, size)."""
    roots = list(roots)
    n = len(roots)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    arr = np.asarray(roots, dtype=complex)
    for i in range(n):
        close = np.flatnonzero(np.abs(arr[i + 1:] - arr[i]) <= tol * max(1.0, abs(arr[i])))
        for j in close + i + 1:
            parent[find(int(j))] = find(i)
    groups: dict = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(arr[i])
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    out.sort(key=lambda t: (abs(t[0]), t[0].real, t[0].imag))
    return out


@dataclass(frozen=True)
class RootReport:
    roots: np.ndarray
    residuals: np.ndarray
    clusters: list
    precision: int


def find_roots(P: Polynomial, cluster_tol: float = 1e-4, polish_prec: int | None = None,
               max_residual: float = 1e-12) -> RootReport:
    """Roots of an exact polynomial with residuals and multiplicity clusters.

    Double precision Aberth runs on an exponent-scaled Horner scheme so that
    coefficients beyond the float range are fine.  The result is then
    polished by Aberth steps in mpmath whenever the coefficients do not fit
    in 53 bits or the degree exceeds 512; the working precision is at
    least 128 bits and grows with the coefficient size.
    """
    if P.is_zero():
        raise NumericError("the zero polynomial has no isolated roots")
    coeffs = list(P.coeffs)
    k0 = next(i for i, c in enumerate(coeffs) if c != 0)
    Q = Polynomial(coeffs[k0:])
    n = Q.degree
    if n == 0:
        zero = np.zeros(k0, dtype=complex)
        return RootReport(zero, np.zeros(k0), clusters(zero, cluster_tol), 53)
    m0, e0 = _split(Q.coeffs[0])
    mn, en = _split(Q.coeffs[-1])
    log_radius = (math.log(abs(m0)) + e0 * math.log(2) - math.log(abs(mn)) - en * math.log(2)) / n
    z, ok, _ = aberth(_scaled_newton(Q), initial_circle(n, math.exp(log_radius)), max_iter=800)
    bits = max(Fraction(c).numerator.bit_length() + Fraction(c).denominator.bit_length() for c in Q.coeffs)
    prec = polish_prec
    if prec is None and (bits > 53 or n > 512 or not ok):
        prec = max(128, bits + 64)
    if prec is not None:
        z = np.array([complex(r) for r in _mp_aberth(Q, z, prec)])
    res = _residuals(Q, z)
    roots = np.concatenate([np.zeros(k0, dtype=complex), z])
    residuals = np.concatenate([np.zeros(k0), res])
    if not np.all(np.isfinite(roots)):
        raise NumericError("root finder produced non-finite values")
    return RootReport(roots, residuals, clusters(roots, cluster_tol), prec or 53)


def poly_roots(P: Polynomial) -> list[complex]:
    """All complex roots of P with multiplicity."""
    return [complex(r) for r in find_roots(P).roots]
