from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from hyperzero.poly import Polynomial

ints = st.lists(st.integers(-10**30, 10**30), max_size=40)


def naive_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out


def test_basics():
    x = Polynomial.x()
    p = (1 + x) ** 3
    assert p.coeffs == (1, 3, 3, 1)
    assert p.degree == 3
    assert p(2) == 27
    assert p.derivative() == Polynomial([3, 6, 3])
    assert Polynomial([0, 0]).is_zero()
    assert Polynomial([1, 2, 0]).degree == 1


def test_division():
    x = Polynomial.x()
    a = (1 + x) ** 2 * (2 + 3 * x)
    q, r = divmod(a, 1 + x)
    assert r.is_zero() and q == (1 + x) * (2 + 3 * x)
    q, r = divmod(x**2 + 1, 2 * x + 1)
    assert q * (2 * x + 1) + r == x**2 + 1
    assert r.degree < 1
    assert a.exact_quotient(2 + 3 * x) == (1 + x) ** 2
    assert (x**2 + 1).exact_quotient(1 + x) is None
    with pytest.raises(ZeroDivisionError):
        divmod(a, Polynomial([]))


@given(ints, ints)
def test_mul_matches_schoolbook(a, b):
    assert list((Polynomial(a) * Polynomial(b)).coeffs) == naive_mul(a, b)


@given(st.lists(st.integers(0, 2**70), min_size=30, max_size=60),
       st.lists(st.integers(0, 2**70), min_size=30, max_size=60))
def test_kronecker_path(a, b):
    assert list((Polynomial(a) * Polynomial(b)).coeffs) == naive_mul(a, b)


@given(ints, st.lists(st.integers(-50, 50), min_size=1, max_size=8).filter(lambda c: c[-1] != 0))
def test_divmod_identity(a, b):
    A, B = Polynomial(a), Polynomial(b)
    q, r = divmod(A, B)
    assert q * B + r == A
    assert r.is_zero() or r.degree < B.degree


@given(ints, st.fractions(min_value=-5, max_value=5))
def test_evaluation(a, t):
    expected = sum(Fraction(c) * t**k for k, c in enumerate(a))
    assert Polynomial(a)(t) == expected
