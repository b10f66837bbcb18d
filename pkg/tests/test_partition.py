import random
from fractions import Fraction

import pytest
from hypothesis import given
import hypothesis.strategies as st

from hyperzero.errors import DegenerateRatioError, ResourceError
from hyperzero.hypergraph import Hypergraph, reduce
from hyperzero.partition import (
    enumerate_independent_sets, hypertree_poly, hypertree_ratio, ratio, ratio_exact,
    tree_recursion_ratio, z_eval, z_eval_exact, z_in_out, z_in_out_exact, z_poly,
)
from hyperzero.poly import Polynomial
from hyperzero.sphere import INF
from oracles import brute_counts, brute_in_out, brute_z, random_linear_hypertree
from strategies import complex_vectors, hypergraphs

TRIANGLE = Hypergraph(3, ((0, 1), (1, 2), (0, 2)))
EDGE3 = Hypergraph(3, ((0, 1, 2),))


def test_enumeration_examples():
    assert enumerate_independent_sets(EDGE3) == [1, 3, 3]
    assert enumerate_independent_sets(Hypergraph(3)) == [1, 3, 3, 1]
    assert enumerate_independent_sets(TRIANGLE) == [1, 3]
    assert enumerate_independent_sets(Hypergraph(3), max_size=1) == [1, 3]


def test_enumeration_guard():
    with pytest.raises(ResourceError):
        enumerate_independent_sets(Hypergraph(40))
    assert enumerate_independent_sets(Hypergraph(40), max_size=2) == [1, 40, 780]


def test_z_poly_examples():
    assert z_poly(EDGE3) == Polynomial([1, 3, 3])
    assert z_poly(Hypergraph(1)) == Polynomial([1, 1])
    assert z_poly(TRIANGLE) == Polynomial([1, 3])


def test_z_eval_examples():
    assert z_eval(EDGE3, 1) == 7
    assert z_eval(TRIANGLE, 0) == 1
    assert z_eval(TRIANGLE, [1, 2, 3]) == 7
    assert z_eval_exact(TRIANGLE, [1, 2, 3]) == 7


def test_in_out_examples():
    assert z_in_out(Hypergraph(1), 0, 2) == (2, 1)
    assert z_in_out_exact(EDGE3, 0, 1) == (3, 4)
    assert z_in_out_exact(Hypergraph(3, ((0,), (1, 2))), 0, 1) == (0, 3)


def test_ratio_examples():
    t = Fraction(2, 7)
    assert ratio_exact(TRIANGLE, 0, t) == t / (1 + 2 * t)
    assert ratio(Hypergraph(1), 0, 0.3) == pytest.approx(0.3)
    assert ratio(Hypergraph(2, ((0,),)), 0, 0.5) == 0
    # Z_out = 1 + lam vanishes at lam = -1 while Z_in = lam does not
    assert ratio(Hypergraph(2, ((0, 1),)), 0, -1) is INF
    with pytest.raises(DegenerateRatioError):
        ratio(Hypergraph(2, ((0,), (0, 1))), 0, -1)


@given(hypergraphs(max_n=8, max_edges=8))
def test_z_poly_matches_enumeration(H):
    counts = brute_counts(H)
    assert list(z_poly(H).coeffs) == counts
    assert enumerate_independent_sets(H) == counts


@given(hypergraphs(max_n=8, max_edges=8))
def test_linear_coefficient_counts_free_vertices(H):
    forced = reduce(H).forced_out
    coeffs = z_poly(H).coeffs
    assert (coeffs[1] if len(coeffs) > 1 else 0) == H.n - len(forced)


@given(hypergraphs(max_n=8, max_edges=8), st.data())
def test_in_out_sum_to_z(H, data):
    lam = data.draw(complex_vectors(H.n, 1.5))
    v = data.draw(st.integers(0, H.n - 1))
    zin, zout = z_in_out(H, v, lam)
    ref_in, ref_out = brute_in_out(H, v, lam)
    scale = max(1.0, abs(ref_in) + abs(ref_out))
    assert abs(zin - ref_in) <= 1e-12 * scale
    assert abs(zout - ref_out) <= 1e-12 * scale
    assert abs(zin + zout - z_eval(H, lam)) <= 1e-12 * scale


@given(hypergraphs(max_n=8, max_edges=8), st.data())
def test_exact_evaluation(H, data):
    lam = [Fraction(data.draw(st.integers(-3, 3)), data.draw(st.integers(1, 4))) for _ in range(H.n)]
    assert z_eval_exact(H, lam) == brute_z(H, lam)


def test_hypertree_routes_agree():
    rng = random.Random(5)
    for _ in range(40):
        T = random_linear_hypertree(rng, 10)
        lam = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(T.n)]
        ref_in, ref_out = brute_in_out(T, 0, lam)
        ref = ref_in / ref_out
        assert abs(hypertree_ratio(T, 0, lam) - ref) <= 1e-10 * max(1, abs(ref))
        assert abs(tree_recursion_ratio(T, 0, lam) - ref) <= 1e-10 * max(1, abs(ref))
        assert list(hypertree_poly(T, 0).coeffs) == brute_counts(T)


def test_larger_instances_use_structure():
    # 30 vertices in a path of 3-edges; enumeration would be slow, the engine is not
    edges = tuple((2 * i, 2 * i + 1, 2 * i + 2) for i in range(14))
    H = Hypergraph(29, edges)
    P = z_poly(H)
    assert P(1) == z_eval_exact(H, 1)
    assert P.coeffs[1] == 29
