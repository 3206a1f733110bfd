import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snnroots.regions import (
    SNN_DEGREE2,
    EHRHART_DEGREE2,
    EHRHART_DEGREE3,
    Region,
    angle_A,
    angle_sum,
    angle_sum_array,
    braun_disc,
    bddps_disc,
    common_halfplane,
    cone_union,
    cos2_A_formula,
    max_angle,
    region_contains,
    snn_angle_locus,
    trace_boundary,
    vertical_strip,
)


def degree5_grid_max(x_lo, x_hi, step=0.02):
    """Max of the degree-5 angle sum over grid points of the disc |z + 1/2| <= 22.5 with x in [x_lo, x_hi], y > 0."""
    xs = np.arange(x_lo, x_hi + step / 2, step)
    ys = np.arange(step, 22.5 + step / 2, step)
    best = -np.inf
    for x in xs:
        z = x + 1j * ys
        z = z[np.abs(z + 0.5) <= 22.5]
        if len(z):
            best = max(best, float(np.nanmax(angle_sum_array(z, 5))))
    return best


class TestAngles:
    def test_positive_real_axis(self):
        assert angle_A(7.5, 1, 5) == 0.0
        assert angle_sum(9.0, 5) == 0.0

    def test_law_of_cosines_point(self):
        # d=3, j=1: r=1, s=4, k^2 = rs = 4
        assert angle_A(2 + 2j, 1, 3) == pytest.approx(math.acos(4 / 5), abs=1e-14)

    def test_symmetric_pair(self):
        assert angle_A(-0.5 + 1j, 0, 1) == pytest.approx(math.pi - 2 * math.atan2(1, 0.5), abs=1e-14)

    def test_degenerate(self):
        with pytest.raises(ValueError):
            angle_A(1.0, 1, 3)
        with pytest.raises(ValueError):
            angle_A(-2.0, 1, 3)
        with pytest.raises(ValueError):
            angle_sum(-3.0, 3)
        with pytest.raises(ValueError):
            angle_A(0.5j, 3, 3)

    def test_cos2_examples(self):
        assert cos2_A_formula(math.sqrt(10), 0, 3) == pytest.approx(40 / 49, abs=1e-15)
        assert cos2_A_formula(1e-8, 2, 3) < 1e-15
        k = math.sqrt(2)
        assert cos2_A_formula(k, 3, 4) == pytest.approx(math.cos(angle_A(3 + k * 1j, 3, 4)) ** 2, abs=1e-14)

    @settings(max_examples=500)
    @given(st.integers(1, 10), st.data())
    def test_cos2_formula_matches_geometry(self, d, data):
        j = data.draw(st.integers(0, d - 1))
        k = data.draw(st.floats(1e-3, 2 * d * d))
        direct = math.cos(angle_A((d - 1) + k * 1j, j, d)) ** 2
        assert abs(direct - cos2_A_formula(k, j, d)) <= 1e-10

    def test_angle_sum_examples(self):
        assert angle_sum(4 + 3j, 5) > math.pi
        assert angle_sum(-0.5 + 0.01j, 2) > math.pi

    def test_vectorised_sum(self):
        zs = np.array([4 + 3j, -0.5 + 0.01j, 1.0, 10 - 2j])
        got = angle_sum_array(zs, 3)
        assert np.isnan(got[2])
        for z, g in zip(zs[[0, 1, 3]], got[[0, 1, 3]]):
            assert g == pytest.approx(angle_sum(z, 3), abs=1e-13)

    def test_angle_is_argument_increment(self):
        # v_{j+1} / v_j = (z - j) / (z + d - j), so A(j) is the turn between successive basis values
        z, d = 1.3 + 2.1j, 4
        v = [np.prod([(z + d - j - i) / (i + 1) for i in range(d)]) for j in range(d + 1)]
        for j in range(d):
            assert abs(np.angle(v[j] / v[j + 1])) == pytest.approx(angle_A(z, j, d), abs=1e-12)


class TestHalfPlane:
    def test_examples(self):
        assert common_halfplane(10, 5)
        assert not common_halfplane(4 + 3j, 5)
        assert common_halfplane(4.5 + 3j, 4)
        assert angle_sum(4.5 + 3j, 4) < math.pi

    def test_zero_points_ignored(self):
        assert common_halfplane(0.0, 3)

    def test_agrees_with_angle_sum(self):
        rng = np.random.default_rng(5)
        for _ in range(2000):
            d = int(rng.integers(2, 8))
            z = complex(rng.uniform(-d - 2, d + 1), rng.uniform(0.05, d))
            s = angle_sum(z, d)
            if abs(s - math.pi) > 1e-6:
                assert common_halfplane(z, d) == (s < math.pi)


class TestRegions:
    def test_parse_and_validation(self):
        assert Region.parse("braun_disc(7)") == braun_disc(7)
        assert Region.parse("snn_degree2") == SNN_DEGREE2
        with pytest.raises(ValueError):
            Region("vertical_strip")
        with pytest.raises(ValueError):
            Region("snn_degree2", 2)
        with pytest.raises(ValueError):
            Region("nowhere", 1)

    def test_spec_examples(self):
        assert region_contains(braun_disc(2), -0.5 + 3j)
        assert region_contains(cone_union(2), 5)
        assert region_contains(SNN_DEGREE2, complex(-0.5, math.sqrt(3) / 2))

    def test_boundaries(self):
        assert region_contains(vertical_strip(4), -4 + 7j)
        assert region_contains(vertical_strip(4), 3 - 7j)
        assert not region_contains(vertical_strip(4), 3.0001)
        assert not region_contains(cone_union(3), 2.0)  # vertex is not in the open cone
        assert region_contains(cone_union(3), 2 + 1e-9)
        assert not region_contains(cone_union(3), 2 + 10j)
        assert region_contains(bddps_disc(3), 25)
        assert not region_contains(bddps_disc(3), 25.01)

    def test_snn_degree2_real_interval_as_printed(self):
        assert region_contains(SNN_DEGREE2, -3)
        assert region_contains(SNN_DEGREE2, 2)
        assert not region_contains(SNN_DEGREE2, 2.01)
        # the general real interval is tighter
        assert not region_contains(snn_angle_locus(2), 2)

    def test_ehrhart_regions(self):
        assert region_contains(EHRHART_DEGREE2, -2)
        assert region_contains(EHRHART_DEGREE2, -2 / 3)
        assert region_contains(EHRHART_DEGREE2, -0.5 + math.sqrt(15) / 6 * 1j)
        assert not region_contains(EHRHART_DEGREE2, 0.5j)  # x < 0 is strict
        assert region_contains(EHRHART_DEGREE3, -3)
        assert region_contains(EHRHART_DEGREE3, -1 + 1.414j)
        assert region_contains(EHRHART_DEGREE3, 1.5j)
        assert not region_contains(EHRHART_DEGREE3, -1.01 + 0.1j)
        assert not region_contains(EHRHART_DEGREE3, 1 + 0.5j)

    def test_tol_grows_closed_and_shrinks_open(self):
        z = -0.5 + 3.000001j
        assert not region_contains(braun_disc(2), z)
        assert region_contains(braun_disc(2), z, tol=1e-5)
        w = 2 + 1e-9
        assert region_contains(cone_union(3), w)
        assert not region_contains(cone_union(3), w, tol=1e-6)

    def test_angle_locus(self):
        assert region_contains(snn_angle_locus(5), 4 + 3j)
        assert region_contains(snn_angle_locus(5), -5)
        assert not region_contains(snn_angle_locus(5), 4.5)
        assert not region_contains(snn_angle_locus(3), 4.5 + 3j)


def test_angle_sum_below_pi_outside_strip_d3_d4():
    rng = np.random.default_rng(8)
    for d in (3, 4):
        R = d * (d - 0.5)
        pts = []
        while len(pts) < 10_000:
            z = -0.5 + R * np.sqrt(rng.uniform(0, 1, 20_000)) * np.exp(1j * rng.uniform(0, 2 * np.pi, 20_000))
            z = z[((z.real > d - 1) | (z.real < -d)) & (np.abs(z.imag) > 1e-12)]
            pts.extend(z.tolist())
        s = angle_sum_array(np.array(pts[:10_000]), d)
        assert np.all(s < np.pi)


def test_degree2_region_matches_angle_locus():
    xs = np.linspace(-3.2, 2.2, 100)
    ys = np.linspace(-1.5, 1.5, 100)
    mismatches = 0
    for x in xs:
        for y in ys:
            z = complex(x, y)
            if abs(abs(z + 0.5) - math.sqrt(3) / 2) <= 1e-6:
                continue
            if y == 0:
                other = -3 <= x <= 2
            else:
                other = angle_sum(z, 2) >= math.pi
            mismatches += region_contains(SNN_DEGREE2, z) != other
    assert mismatches == 0


@pytest.mark.parametrize("d", range(2, 8))
def test_single_crossing_per_ray(d):
    R = d * (d - 0.5)
    rho = np.linspace(R, 0, 2000, endpoint=False)
    for theta in np.pi * (np.arange(64) + 0.5) / 64:
        g = angle_sum_array(-0.5 + rho * np.exp(1j * theta), d) - np.pi
        s = np.sign(g[~np.isnan(g)])
        s[s == 0] = 1
        assert np.count_nonzero(np.diff(s)) <= 1


class TestDegree5Bound:
    def test_outside_strip_bounded(self):
        right = degree5_grid_max(4.0, 22.0)
        left = degree5_grid_max(-23.0, -5.0)
        assert max(left, right) <= 3.17
        assert right > math.pi  # the sum does exceed pi there, so degree-5 roots can leave the strip

    def test_whole_disc_is_not_bounded(self):
        # inside the strip, near the real axis, the sum approaches d*pi
        assert angle_sum(-0.5 + 0.01j, 5) > 3 * math.pi


class TestTrace:
    def test_d2_top(self):
        curve = trace_boundary(2, 8)
        top = min(curve.points, key=lambda p: abs(p.real + 0.5))
        # no ray is exactly vertical at n=8; project to the circle
        assert abs(abs(top + 0.5) - math.sqrt(3) / 2) <= 1e-9
        z = trace_boundary(2, 9).points[4]
        assert abs(z - complex(-0.5, math.sqrt(3) / 2)) <= 1e-9

    def test_d2_circle(self):
        curve = trace_boundary(2, 64)
        assert len(curve.points) == 64 and not curve.missed
        for p in curve.points:
            assert abs(p.imag**2 - (-p.real**2 - p.real + 0.5)) <= 1e-6

    def test_invariants(self):
        curve = trace_boundary(4, 32)
        assert list(curve.thetas) == sorted(curve.thetas)
        for p in curve.points:
            assert p.imag > 0
            assert abs(angle_sum(p, 4) - math.pi) <= curve.solver_tol

    def test_d3_inside_strip(self):
        assert max(p.real for p in trace_boundary(3, 64).points) < 2

    def test_outside_strip_from_d5(self):
        assert max(p.real for p in trace_boundary(5, 64).points) > 4
        assert max(p.real for p in trace_boundary(7, 64).points) > 6

    def test_csv(self):
        text = trace_boundary(2, 8).to_csv().splitlines()
        assert text[0] == "theta,re,im" and len(text) == 9

    def test_bad_input(self):
        with pytest.raises(ValueError):
            trace_boundary(1)
        with pytest.raises(ValueError):
            trace_boundary(3, 4)


class TestMaxAngle:
    def test_d3_table(self):
        vals = [max_angle(3, j) for j in range(3)]
        assert vals[0] == pytest.approx(math.acos(math.sqrt(40 / 49)), abs=1e-14)
        assert vals[2] == pytest.approx(math.pi / 2, abs=1e-15)
        for v, lo, hi in zip(vals, (0.44, 0.64, 1.57), (0.45, 0.65, 1.58)):
            assert lo <= v <= hi

    def test_d4_small_k(self):
        # the printed 0.24 is the value rounded to two places
        assert round(max_angle(4, 0, (0, math.sqrt(2))), 2) == 0.24

    def test_against_dense_scan(self):
        for d in (3, 4, 6):
            ks = np.geomspace(1e-4, 4 * d * d, 20001)
            for j in range(d):
                scan = max(angle_A((d - 1) + k * 1j, j, d) for k in ks[::20])
                assert max_angle(d, j) >= scan - 1e-12
                assert max_angle(d, j) - scan <= 2e-3

    def test_bad_index(self):
        with pytest.raises(ValueError):
            max_angle(3, 3)
