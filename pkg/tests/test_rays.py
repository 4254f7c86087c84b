import math
import random

import pytest

from horoshadow.halfspace import (
    ArcGeodesic,
    AtInfinityHoroball,
    Point,
    TangentHoroball,
    VerticalGeodesic,
    hyperbolic_dist,
    param_of,
    penetration_depth,
    point_to_horoball_dist,
    shrink,
)
from horoshadow.packings import HoroballFamily, extremal, farey
from horoshadow.rays import (
    CONE_CONSTANT,
    TRIANGLE_CONSTANT,
    biinfinite_line,
    glue_constants,
    ray_from_point,
    verify_avoidance,
)
from horoshadow.sharp2d import sharp_shrink_time

T1 = sharp_shrink_time(1)
GOLDEN = (1 + math.sqrt(5)) / 2


class TestGlueConstants:
    def test_values(self):
        gc = glue_constants()
        assert gc["cone"] == pytest.approx(math.log(2 + math.sqrt(5)), abs=1e-15)
        assert gc["triangle"] == pytest.approx(math.log(1 + math.sqrt(2)), abs=1e-15)
        assert gc["cone"] > gc["triangle"]


class TestVerifyAvoidance:
    def test_golden_vertical_avoids_shrunk_farey(self):
        fam = farey(300, (1, 2))
        rep = verify_avoidance(VerticalGeodesic(GOLDEN), fam, 0.27)
        assert rep.ok and rep.margin > 0

    def test_vertical_at_a_base_point_fails(self):
        rep = verify_avoidance(VerticalGeodesic(0.5), farey(2, (0, 1)), 0.0)
        assert not rep.ok
        bad = dict(rep.max_depths)
        idx = farey(2, (0, 1)).labels.index("1/2")
        assert bad[idx] == math.inf

    def test_tangency_counts_as_avoiding(self):
        fam = HoroballFamily(2, [AtInfinityHoroball(1)])
        rep = verify_avoidance(ArcGeodesic(-1, 1), fam, 0.0)
        assert rep.ok
        assert rep.max_depths[0][1] == pytest.approx(0, abs=1e-15)

    def test_margin_monotone_in_t(self):
        fam = farey(50, (0, 1))
        g = VerticalGeodesic(GOLDEN - 1)
        margins = [verify_avoidance(g, fam, t).margin for t in (0.5, 0.8, 1.2, 2.0)]
        assert margins == sorted(margins)

    def test_interval_logic_matches_sampling(self):
        # depth of a restricted geodesic against a shrunk family agrees
        # with a dense parameter sweep (checked on the deepest handful of
        # horoballs per instance)
        rnd = random.Random(41)
        fam = farey(20, (0, 1))
        for _ in range(12):
            lo, hi = sorted((rnd.uniform(-1.5, 1.5), rnd.uniform(-1.5, 1.5)))
            if hi - lo < 0.1:
                continue
            g = ArcGeodesic(rnd.uniform(-1, 0.2), rnd.uniform(0.3, 1.5), (lo, hi))
            t = rnd.uniform(0, 1)
            rep = verify_avoidance(g, fam, t)
            deepest = sorted(rep.max_depths, key=lambda p: -p[1])[:5]
            for idx, depth in deepest:
                h = shrink(fam.horoballs[idx], t)
                sampled = max(
                    -point_to_horoball_dist(g.point_at(lo + (hi - lo) * k / 800), h)
                    for k in range(801))
                assert depth >= sampled - 1e-9
                assert depth <= sampled + 1e-5


class TestRayFromPoint:
    def test_farey_with_reference(self):
        fam = farey(100, (0, 1), include_infinity=True)
        t = T1 + CONE_CONSTANT + 0.01
        res = ray_from_point(fam, Point(0.5, 0.9), t)
        assert res.report.ok
        assert res.nearest_clear
        # the ray really starts at the requested point
        lo, hi = res.ray.param_range
        start = res.ray.point_at(lo if math.isfinite(lo) else hi)
        assert hyperbolic_dist(start, Point(0.5, 0.9)) < 1e-7

    def test_single_far_horoball_goes_straight(self):
        fam = HoroballFamily(2, [TangentHoroball(10.0, 0.5)])
        res = ray_from_point(fam, Point(0.0, 1.0), 1.0)
        assert res.report.ok and res.nearest_clear
        assert res.endpoint is not None

    def test_point_on_horosphere_accepted(self):
        fam = farey(100, (0, 1), include_infinity=True)
        t = T1 + CONE_CONSTANT + 0.01
        res = ray_from_point(fam, Point(0.5, 0.5), t)  # tangent to two balls
        assert res.report.ok and res.nearest_clear

    def test_point_inside_rejected(self):
        fam = farey(100, (0, 1))
        with pytest.raises(ValueError):
            ray_from_point(fam, Point(0.5, 0.05), 2.0)  # inside the ball at 1/2

    def test_low_point_between_horoballs(self):
        fam = farey(40, (0, 1), include_infinity=True)
        t = T1 + CONE_CONSTANT + 0.01
        # lower a point at a badly approximable base until just outside
        # every horoball
        base = (3 - math.sqrt(5)) / 2
        height = 0.95
        while min(point_to_horoball_dist(Point(base, height * 0.9), h)
                  for h in fam.horoballs) > 0:
            height *= 0.9
        x = Point(base, height)
        assert min(point_to_horoball_dist(x, h) for h in fam.horoballs) > -1e-9
        res = ray_from_point(fam, x, t)
        assert res.report.ok and res.nearest_clear

    def test_nearest_horoball_never_entered(self):
        fam = farey(60, (0, 1), include_infinity=True)
        t = T1 + CONE_CONSTANT + 0.01
        for base, h in ((0.5, 0.7), (0.5, 0.9), (0.48, 0.8)):
            res = ray_from_point(fam, Point(base, h), t)
            depth0 = penetration_depth(res.ray, fam.horoballs[res.nearest_index])
            assert depth0 <= 1e-9


class TestBiinfiniteLine:
    def test_farey_with_reference(self):
        fam = farey(100, (0, 1), include_infinity=True)
        t = T1 + TRIANGLE_CONSTANT + 0.01
        res = biinfinite_line(fam, t)
        assert res.report.ok
        # both endpoints in the shadow of the largest horoball
        b0, r0 = 0.0, 0.5
        for (e,) in res.endpoints:
            assert abs(e - b0) <= r0 + 1e-12
        # the arc misses the reference horoball outright
        ref = fam.horoballs[-1]
        assert isinstance(ref, AtInfinityHoroball)
        assert penetration_depth(res.line, ref) <= 0

    def test_extremal_family(self):
        fam = extremal(10)
        res = biinfinite_line(fam, T1 + TRIANGLE_CONSTANT + 0.01)
        assert res.report.ok

    def test_two_horoballs(self):
        fam = HoroballFamily(2, [TangentHoroball(0.0, 0.5), TangentHoroball(1.0, 0.5)])
        res = biinfinite_line(fam, T1 + TRIANGLE_CONSTANT + 0.01)
        assert res.report.ok
        a, b = res.endpoints
        assert a[0] < 0 < b[0] < 1

    def test_depth_convexity_along_line(self):
        # the inside-parameter set of each horoball is one interval:
        # sampled depths rise then fall
        fam = farey(30, (0, 1))
        res = biinfinite_line(fam, T1 + TRIANGLE_CONSTANT + 0.01)
        g = res.line
        h = fam.horoballs[0]
        vals = [-point_to_horoball_dist(g.point_at(-3 + 6 * k / 400), h)
                for k in range(401)]
        peak = vals.index(max(vals))
        assert all(x <= y + 1e-12 for x, y in zip(vals[:peak], vals[1:peak + 1]))
        assert all(x >= y - 1e-12 for x, y in zip(vals[peak:], vals[peak + 1:]))
