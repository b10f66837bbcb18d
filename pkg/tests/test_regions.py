import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
import hypothesis.strategies as st

from hyperzero.dynamics import DynParams, f_array
from hyperzero.errors import InputError
from hyperzero.regions import (
    Cone, Disk, HalfPlane, LensB, MuImage, Polygon, RegionA, b_curve, b_curve_minimum,
    boundary_samples, check_forward_invariance, check_log_convexity, check_semigroup, contains,
    lambda_c, lambda_s, limit_map_check, limit_map_deviation, mu, mu_image_lens, mu_inv,
    sokal_crossing, large_degree_inequalities,
)
from hyperzero.sphere import INF


def test_radii():
    assert lambda_s(3) == Fraction(4, 27)
    assert lambda_s(2) == Fraction(1, 4)
    assert lambda_s(4) == Fraction(27, 256)
    assert lambda_c(3) == 4
    assert lambda_c(4) == Fraction(27, 16)
    assert lambda_c(5) == Fraction(256, 243)
    with pytest.raises(InputError):
        lambda_s(1)
    with pytest.raises(InputError):
        lambda_c(2)


@pytest.mark.parametrize("d", range(2, 12))
def test_two_forms_of_lambda_c(d):
    assert lambda_c(d + 1) == Fraction(d**d, (d - 1) ** (d + 1))


def test_mu():
    assert mu(0) == 0
    assert mu(1) == 0.5
    assert mu(-0.5) == -1
    assert mu(-1) is INF
    assert mu(INF) == 1
    assert mu_inv(1) is INF
    assert mu_inv(INF) == -1


@given(st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False))
def test_mu_round_trip(z):
    if abs(1 + z) < 1e-6:
        return
    assert abs(mu_inv(mu(z)) - z) <= 1e-9 * max(1, abs(z))


def test_membership_examples():
    assert contains(Cone(0, math.pi / 4), 1 + 1j, tol=1e-15)
    for eps in (1e-3, 0.1, 1.0):
        assert contains(RegionA(-1 / 3, 2, eps), 0)
    lens = LensB(-0.5, 0.5, 0.1)
    assert not contains(lens, 0.5 + 100j)
    assert contains(lens, 0.0)


def test_region_a_parameters():
    A = RegionA(-1 / 3, 2, 0.01)
    assert A.eps_tilde == pytest.approx(math.atan((2 + 1 / 3) / 3 * math.tan(0.01)))
    assert contains(A, A.corner, tol=1e-12)
    with pytest.raises(InputError):
        RegionA(1, 0.5, 0.1)


def test_boundary_samples():
    pts = boundary_samples(Disk(0, 1), 4)
    assert np.allclose(pts, [1, 1j, -1, -1j], atol=0)
    A = RegionA(-1 / 3, 2, 0.01)
    pts = boundary_samples(A, 64)
    assert len(pts) == 64
    assert np.min(np.abs(pts - A.corner)) < 1e-15
    assert np.min(np.abs(pts - A.corner.conjugate())) < 1e-15
    assert np.min(np.abs(pts + 1 / 3)) == 0
    cone = boundary_samples(Cone(0.0, 0.3), 64, cap=50)
    assert np.max(np.abs(cone)) == pytest.approx(50)
    assert np.all(np.abs(A.margin(pts)) < 1e-12)


def test_log_convexity_examples():
    assert check_log_convexity(RegionA(-1 / 3, 2, 0.05), 512).passed
    assert check_log_convexity(HalfPlane(0.5, 0.3), 512).passed
    star = Polygon(tuple(complex(*p) for p in [(2, 0), (0.3, 0.3), (0, 2), (-0.3, 0.3), (-2, 0),
                                               (-0.3, -0.3), (0, -2), (0.3, -0.3)]))
    assert not check_log_convexity(star, 256, shift=3).passed
    with pytest.raises(InputError):
        check_log_convexity(Disk(-1, 0.5), 64)


def test_semigroup_examples():
    assert check_semigroup(MuImage(RegionA(-1 / 3, 2, 1e-3)), 512).passed
    assert check_semigroup(Disk(0, 0.5), 256).passed
    assert not check_semigroup(Disk(0.6, 0.5), 256).passed


def test_forward_invariance_examples():
    A = RegionA(-1 / 3, 2, 1e-3)
    ok = check_forward_invariance(A, DynParams(1, 2, 3.9), 512)
    assert ok.passed and ok.margin > 0
    assert check_forward_invariance(RegionA(-1 / 4, 1, 1e-3), DynParams(1, 3, 1.68), 512).passed
    assert not check_forward_invariance(A, DynParams(1, 2, 4.2), 512).passed


@pytest.mark.parametrize("d", [2, 3, 4])
def test_cone_is_forward_invariant(d):
    lam = 0.9 * float(lambda_c(d + 1))
    rep = check_forward_invariance(Cone(-1 / (d + 1), 1e-3), DynParams(1, d, lam), 1024)
    assert rep.passed and rep.margin > 0


@given(st.integers(1, 5), st.floats(-0.9, 2.0), st.floats(0.01, 0.99), st.floats(0.01, 10))
def test_cone_maps_into_wider_cone(d, x, frac, lam):
    delta = frac * math.pi / d
    pts = boundary_samples(Cone(x, delta), 128, cap=100)
    images = f_array(DynParams(1, d, lam), pts)
    assert np.all(Cone(0.0, d * delta).margin(images) >= -1e-12 * np.maximum(1, np.abs(images)))


@pytest.mark.parametrize("eps", [1e-2, 1e-3])
def test_mu_maps_region_a_onto_lens(eps):
    A = RegionA(-1 / 3, 2, eps)
    lens = mu_image_lens(A)
    assert lens.y == pytest.approx(-0.5)
    images = mu_array_of(boundary_samples(A, 512))
    dense = boundary_samples(lens, 20000)
    assert np.min(np.abs(images[:, None] - dense[None, :]), axis=1).max() <= 5 * eps


def mu_array_of(z):
    return z / (1 + z)


def test_b_curves():
    assert b_curve(2, 4, 0) == 0
    best2 = b_curve_minimum(2, 4)
    best3 = b_curve_minimum(3, 27 / 16)
    assert -0.916 < best2.value <= 0
    assert -0.891 < best3.value <= 0
    t = np.linspace(0, 1, 200001)
    assert abs(t[np.argmin(b_curve(2, 4, t))] - best2.t_min) < 1e-5
    assert best2.value <= float(np.min(b_curve(2, 4, t))) + 1e-12
    with pytest.raises(InputError):
        b_curve(4, 1, 0.5)


def test_theorem12():
    rep = large_degree_inequalities(4)
    assert rep.left == Fraction(1037, 1215)
    assert rep.right_interval == (1, 1)
    assert rep.holds
    assert large_degree_inequalities(10).holds
    assert abs(sokal_crossing() - 4.0389) < 1e-3


def test_limit_map():
    assert limit_map_deviation(1, 10**6, grid=1) == pytest.approx(0, abs=1e-5)
    rows = limit_map_check(2.0)
    devs = [x for _, x in rows]
    assert devs[0] > devs[1] > devs[2]
    for a, b in zip(devs, devs[1:]):
        assert 7 < a / b < 13
    assert limit_map_deviation(math.e * 0.9, 1000) > limit_map_deviation(math.e * 0.9, 10000)
