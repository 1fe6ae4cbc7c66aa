import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsplanner.accelerated import solve
from rsplanner.errors import DomainError, InvalidRadiusError
from rsplanner.geometry import PathSegment, Pose, RsPath, SegmentKind, normalize_angle
from rsplanner.integrator import (endpoint_error, integrate, polyline_arclengths,
                                  polyline_csv, sample_polyline)

from .conftest import near, poses, radius

L, R, S = SegmentKind.LEFT, SegmentKind.RIGHT, SegmentKind.STRAIGHT


def path(*segs):
    return RsPath(tuple(PathSegment(k, d, n) for k, d, n in segs))


def test_straight():
    end = integrate(Pose(0, 0, 0), path((S, 1, 5.0)), 1.0)
    assert end.as_tuple() == pytest.approx((5, 0, 0))


def test_quarter_left_turn():
    end = integrate(Pose(0, 0, 0), path((L, 1, math.pi)), 2.0)  # arc length pi at r=2
    assert end.as_tuple() == pytest.approx((2, 2, math.pi / 2), abs=1e-12)


def test_reverse_right_turn():
    end = integrate(Pose(0, 0, 0), path((R, -1, math.pi / 2)), 1.0)
    # backing up while steering right swings the rear toward -x, -y
    assert end.as_tuple() == pytest.approx((-1, -1, math.pi / 2), abs=1e-12)


def test_three_cusp_example():
    # known three-cusp optimum, values given to 5 decimals
    p = path((L, -1, 0.32051), (R, 1, 0.67456), (L, -1, 0.50493))
    end = integrate(Pose(0, 0, 0), p, 1.0)
    assert end.x == pytest.approx(0.05, abs=1e-4)
    assert end.y == pytest.approx(0.12, abs=1e-4)
    assert end.theta == pytest.approx(-1.5, abs=1e-4)


def test_invalid_radius():
    with pytest.raises(InvalidRadiusError):
        integrate(Pose(0, 0, 0), path(), 0.0)


class TestPolyline:
    def test_straight_even_spacing(self):
        pts = sample_polyline(Pose(0, 0, 0), path((S, 1, 10.0)), 1.0, 1.0)
        assert len(pts) == 11
        assert [p.x for p in pts] == pytest.approx(list(range(11)))

    def test_empty_path(self):
        p0 = Pose(1, 2, 3)
        assert sample_polyline(p0, path(), 1.0, 0.5) == [p0]

    @pytest.mark.parametrize("ds", [0.0, -1.0, math.nan])
    def test_rejects_bad_step(self, ds):
        with pytest.raises(DomainError):
            sample_polyline(Pose(0, 0, 0), path((S, 1, 1.0)), 1.0, ds)

    @given(poses(near), poses(near), radius, st.floats(min_value=0.05, max_value=5))
    def test_last_sample_is_integrate(self, p0, pf, r, ds):
        pth = solve(p0, pf, r)
        pts = sample_polyline(p0, pth, r, ds)
        assert pts[-1] == integrate(p0, pth, r)
        arcs = polyline_arclengths(pts, pth, ds)
        steps = [b - a for a, b in zip(arcs, arcs[1:])]
        assert all(s <= ds * (1 + 1e-12) for s in steps)
        assert arcs[-1] == pytest.approx(pth.total_length)

    def test_left_arc_keeps_center(self):
        r = 3.0
        pts = sample_polyline(Pose(1, 1, 0.4), path((L, 1, 7.0)), r, 0.1)
        centers = [(p.x - r * math.sin(p.theta), p.y + r * math.cos(p.theta)) for p in pts]
        cx, cy = centers[0]
        assert all(abs(x - cx) <= 1e-12 and abs(y - cy) <= 1e-12 for x, y in centers)

    def test_csv_header(self):
        pth = path((S, 1, 2.0))
        pts = sample_polyline(Pose(0, 0, 0), pth, 1.0, 1.0)
        text = polyline_csv(pts, polyline_arclengths(pts, pth, 1.0))
        lines = text.splitlines()
        assert lines[0] == "s,x,y,theta"
        assert len(lines) == 4


class TestEndpointError:
    def test_exact(self):
        err = endpoint_error(Pose(0, 0, 0), path((S, 1, 5.0)), Pose(5, 0, 0), 1.0)
        assert err.position_error == 0.0 and err.heading_error == 0.0

    def test_shortened_final_straight(self):
        p0, pf = Pose(0, 0, 0), Pose(4, 4, math.pi / 2)
        full = path((S, 1, 2.0), (L, 1, math.pi), (S, 1, 2.0))
        assert endpoint_error(p0, full, pf, 2.0).position_error == pytest.approx(0, abs=1e-12)
        short = path((S, 1, 2.0), (L, 1, math.pi), (S, 1, 2.0 - 0.25))
        err = endpoint_error(p0, short, pf, 2.0)
        assert err.position_error == pytest.approx(0.25, abs=1e-12)
        assert err.heading_error == pytest.approx(0.0, abs=1e-12)


@given(poses(near), poses(near), radius, st.floats(min_value=0.0, max_value=1.0))
def test_composition(p0, pf, r, frac):
    pth = solve(p0, pf, r)
    segs = [s for s in pth.segments if s.length > 0]
    if not segs:
        return
    # split the path inside a segment
    k = int(frac * (len(segs) - 1) + 0.5)
    cut = segs[k].length * frac
    head = segs[:k] + [PathSegment(segs[k].kind, segs[k].direction, cut)]
    tail = [PathSegment(segs[k].kind, segs[k].direction, segs[k].length - cut)] + segs[k + 1:]
    whole = integrate(p0, RsPath(tuple(segs)), r)
    mid = integrate(p0, RsPath(tuple(head)), r)
    both = integrate(mid, RsPath(tuple(tail)), r)
    scale = max(1.0, r, pth.total_length)
    assert math.dist(whole.xy, both.xy) <= 1e-12 * scale * 10
    assert abs(normalize_angle(whole.theta - both.theta)) <= 1e-12


@given(poses(near), poses(near), radius)
def test_reversal_returns_home(p0, pf, r):
    pth = solve(p0, pf, r)
    back = RsPath(tuple(PathSegment(s.kind, -s.direction, s.length)
                        for s in reversed(pth.segments)))
    end = integrate(integrate(p0, pth, r), back, r)
    scale = max(1.0, r, pth.total_length)
    assert math.dist(end.xy, p0.xy) <= 1e-12 * scale * 10
    assert abs(normalize_angle(end.theta - p0.theta)) <= 1e-12
