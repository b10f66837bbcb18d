import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings

from hyperzero.errors import InputError, NumericError, Refusal, ResourceError
from hyperzero.fptas import approx_z, certified_region, disk_tail_bound, formal_log, log_z_coeffs
from hyperzero.hypergraph import Hypergraph
from hyperzero.partition import z_eval, z_poly
from hyperzero.regions import lambda_c, lambda_s
from oracles import brute_counts, formal_log_reference, random_hypergraph
from strategies import hypergraphs

EDGE3 = Hypergraph(3, ((0, 1, 2),))


def test_log_coeffs_single_edge():
    assert log_z_coeffs(EDGE3, 2) == [3, Fraction(-3, 2)]


def test_log_coeffs_edgeless():
    n = 5
    coeffs = log_z_coeffs(Hypergraph(n, ()), 6)
    assert coeffs == [Fraction(n * (-1) ** (j + 1), j) for j in range(1, 7)]


def test_linear_term_skips_forced_vertices():
    H = Hypergraph(5, ((0,), (3,), (1, 2)))
    assert log_z_coeffs(H, 1) == [3]


def test_order_validation():
    with pytest.raises(ResourceError):
        log_z_coeffs(EDGE3, 13)
    with pytest.raises(InputError):
        log_z_coeffs(EDGE3, -1)
    assert log_z_coeffs(EDGE3, 0) == []
    with pytest.raises(InputError):
        formal_log([2, 1])


@settings(max_examples=40)
@given(hypergraphs(max_n=9, max_edges=6))
def test_log_coeffs_match_exact_polynomial(H):
    m = 8
    counts = [int(c) for c in z_poly(H).coeffs]
    assert log_z_coeffs(H, m) == formal_log_reference(counts, m)


def test_log_coeffs_match_exact_polynomial_n14():
    rng = random.Random(7)
    for _ in range(6):
        H = random_hypergraph(rng, 14, 10, 3, 4)
        counts = [int(c) for c in z_poly(H).coeffs]
        assert log_z_coeffs(H, 10) == formal_log_reference(counts, 10)
        assert counts == brute_counts(H)


def test_approx_examples():
    res = approx_z(EDGE3, 0.05, 1e-3)
    assert abs(res.estimate - 1.1575) / 1.1575 <= 1e-3
    assert res.regime == "disk"
    zero = approx_z(EDGE3, 0, 1e-3)
    assert zero.estimate == 1 and zero.order == 0
    with pytest.raises(Refusal):
        approx_z(EDGE3, float(lambda_c(3)) + 0.1, 1e-3)
    with pytest.raises(InputError):
        approx_z(EDGE3, 0.01, 0)


def test_regimes():
    H = Hypergraph(4, ((0, 1), (0, 2), (0, 3)))
    assert certified_region(H, 0.1) == "disk"
    assert certified_region(H, 1.0) == "segment"
    assert certified_region(H, 1j) is None
    assert certified_region(H, -0.2) is None
    assert certified_region(H, float(lambda_c(3)) + 0.01) is None


def test_segment_regime_accuracy():
    # star with three leaves: the segment is (0, 4), the disk radius 4/27, and the
    # Taylor series at 0 converges up to the negative zero near -0.32
    H = Hypergraph(4, ((0, 1), (0, 2), (0, 3)))
    res = approx_z(H, 0.2, 1e-2)
    assert res.regime == "segment"
    assert res.empirical_rel_error <= 1e-2


def test_disk_falls_back_to_term_rule():
    H = Hypergraph(6, tuple((i, i + 1) for i in range(5)))
    res = approx_z(H, 0.2, 1e-2)
    assert res.regime == "disk" and res.order <= 12
    assert res.empirical_rel_error <= 1e-2


def test_cap_reached_raises():
    H = Hypergraph(4, ((0, 1), (0, 2), (0, 3)))
    with pytest.raises(NumericError):
        approx_z(H, 3.5, 1e-6)


def test_tail_bound_decreases():
    vals = [disk_tail_bound(10, 0.5, m) for m in range(1, 10)]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def _instances(count, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, 18)
        H = random_hypergraph(rng, n, rng.randint(1, 2 * n), 3, 4)
        out.append(H)
    return out


def test_random_instances_within_eps():
    worst = 0.0
    for H in _instances(50):
        r = float(lambda_s(max(H.max_degree, 2))) / 2
        for k in range(5):
            lam = r * cmath.exp(2j * cmath.pi * k / 5)
            res = approx_z(H, lam, 1e-2)
            worst = max(worst, res.empirical_rel_error)
    assert worst <= 1e-2


def test_monotone_improvement():
    good = total = 0
    for H in _instances(40, seed=3):
        lam = float(lambda_s(max(H.max_degree, 2))) / 2 * cmath.exp(0.7j)
        exact = z_eval(H, lam)
        coeffs = [complex(a) for a in log_z_coeffs(H, 10)]
        errs = []
        for m in range(1, 11):
            est = cmath.exp(sum(a * lam**j for j, a in enumerate(coeffs[:m], start=1)))
            errs.append(abs(est - exact) / abs(exact))
        for a, b in zip(errs, errs[1:]):
            total += 1
            good += b <= a
    assert good / total >= 0.9
