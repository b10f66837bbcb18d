"""Exact univariate polynomials with integer or rational coefficients.

Coefficients are stored lowest degree first.  Large integer products use
Kronecker substitution so that Python's big-integer multiplication does the
convolution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

_NAIVE_CUTOFF = 24


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _naive_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _pack(values: Sequence[int], width: int) -> int:
    digits = width // 4
    return int("".join(format(v, "0%dx" % digits) for v in reversed(values)) or "0", 16)


def _unpack(value: int, width: int, count: int) -> list[int]:
    digits = width // 4
    text = format(value, "x").rjust(digits * count, "0")
    out = []
    for i in range(count):
        end = len(text) - i * digits
        out.append(int(text[end - digits:end], 16))
    return out


def _kronecker_nonneg(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not any(a) or not any(b):
        return [0] * (len(a) + len(b) - 1)
    bound = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    width = (bound + 3) // 4 * 4
    product = _pack(a, width) * _pack(b, width)
    return _unpack(product, width, len(a) + len(b) - 1)


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if min(len(a), len(b)) < _NAIVE_CUTOFF:
        return _naive_mul(a, b)
    if min(a) >= 0 and min(b) >= 0:
        return _kronecker_nonneg(a, b)
    ap = [max(x, 0) for x in a]
    an = [max(-x, 0) for x in a]
    bp = [max(x, 0) for x in b]
    bn = [max(-x, 0) for x in b]
    terms = [_kronecker_nonneg(ap, bp), _kronecker_nonneg(an, bn),
             _kronecker_nonneg(ap, bn), _kronecker_nonneg(an, bp)]
    return [p + q - r - s for p, q, r, s in zip(*terms)]


def _mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    if all(isinstance(x, int) for x in a) and all(isinstance(x, int) for x in b):
        return _int_mul(a, b)
    if min(len(a), len(b)) < _NAIVE_CUTOFF:
        return _naive_mul(a, b)
    # clear denominators, multiply as integers, restore
    da = lcm(*(Fraction(x).denominator for x in a))
    db = lcm(*(Fraction(x).denominator for x in b))
    ia = [int(Fraction(x) * da) for x in a]
    ib = [int(Fraction(x) * db) for x in b]
    return [Fraction(c, da * db) for c in _int_mul(ia, ib)]


@dataclass(frozen=True)
class Polynomial:
    """Polynomial sum_k coeffs[k] * x**k with exact coefficients."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        cleaned = _trim([_normalize(c) for c in coeffs])
        for c in cleaned:
            if not isinstance(c, (int, Fraction)):
                raise TypeError("coefficients must be int or Fraction, got %r" % type(c))
        object.__setattr__(self, "coeffs", tuple(cleaned))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coefficient(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Polynomial([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        lead = Fraction(other.leading())
        dd = other.degree
        if self.degree < dd:
            return Polynomial(), self
        quot = [Fraction(0)] * (self.degree - dd + 1)
        for k in range(self.degree - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] -= q * c
        return Polynomial(quot), Polynomial(rem[:dd])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_quotient(self, other: "Polynomial") -> "Polynomial | None":
        """Quotient if `other` divides `self` exactly, else None.

        Uses power-series division from the constant term when that term is
        a unit, which keeps everything in integers for partition functions.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero():
            return Polynomial()
        if self.degree < other.degree:
            return None
        c0 = other.coeffs[0]
        if c0 in (1, -1):
            n = self.degree - other.degree + 1
            d = other.coeffs
            q: list = []
            for k in range(n):
                acc = self.coefficient(k)
                for j in range(1, min(k, len(d) - 1) + 1):
                    acc -= d[j] * q[k - j]
                q.append(acc * c0)
            quotient = Polynomial(q)
            return quotient if quotient * other == self else None
        quotient, remainder = divmod(self, other)
        return quotient if remainder.is_zero() else None

    def __call__(self, x):
        acc = 0 * x
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:])

    def __repr__(self) -> str:
        return "Polynomial(%r)" % (list(self.coeffs),)
