import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsplanner.errors import DomainError, InvalidRadiusError
from rsplanner.geometry import (PathSegment, Pose, Quadrant, RsPath, SegmentKind,
                                backward_project_from_q1, forward_project_to_q1,
                                from_local_frame, normalize_angle, to_local_frame,
                                turning_circle_centers)

from .conftest import coord, heading, poses, radius

L, R, S = SegmentKind.LEFT, SegmentKind.RIGHT, SegmentKind.STRAIGHT


def close(a, b, tol=1e-12):
    return all(abs(x - y) <= tol for x, y in zip(a, b))


class TestNormalizeAngle:
    @pytest.mark.parametrize("a, want", [
        (0.0, 0.0),
        (2 * math.pi, 0.0),
        (-1.5 * math.pi, 0.5 * math.pi),
        (math.pi, -math.pi),
        (-math.pi, -math.pi),
    ])
    def test_examples(self, a, want):
        assert normalize_angle(a) == pytest.approx(want, abs=1e-15)

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_rejects_non_finite(self, bad):
        with pytest.raises(DomainError):
            normalize_angle(bad)

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_range_and_congruence(self, a):
        v = normalize_angle(a)
        assert -math.pi <= v < math.pi
        k = (a - v) / (2 * math.pi)
        assert abs(k - round(k)) < 1e-9

    @given(st.floats(min_value=-1e6, max_value=1e6, allow_nan=False))
    def test_idempotent(self, a):
        v = normalize_angle(a)
        assert normalize_angle(v) == v


class TestPose:
    def test_heading_normalized(self):
        assert Pose(0, 0, 2 * math.pi).theta == 0.0
        assert Pose(0, 0, math.pi).theta == -math.pi

    def test_rejects_non_finite_position(self):
        with pytest.raises(DomainError):
            Pose(math.nan, 0.0, 0.0)


class TestTurningCircles:
    @pytest.mark.parametrize("pose, r, left, right", [
        ((0, 0, 0), 1, (0, 1), (0, -1)),
        ((0, 0, math.pi / 2), 20, (-20, 0), (20, 0)),
        ((3, 4, math.pi), 2, (3, 2), (3, 6)),
    ])
    def test_examples(self, pose, r, left, right):
        tc = turning_circle_centers(Pose(*pose), r)
        assert close(tc.c_left, left)
        assert close(tc.c_right, right)
        assert tc.radius == r

    @pytest.mark.parametrize("r", [0, -1, math.nan, math.inf])
    def test_invalid_radius(self, r):
        with pytest.raises(InvalidRadiusError):
            turning_circle_centers(Pose(0, 0, 0), r)

    @given(poses(), radius)
    def test_invariants(self, p, r):
        tc = turning_circle_centers(p, r)
        gap = math.dist(tc.c_left, tc.c_right)
        assert abs(gap - 2 * r) <= 1e-12 * max(1.0, 2 * r) * 10
        assert abs(math.dist(tc.c_left, p.xy) - r) <= 1e-9
        assert abs(math.dist(tc.c_right, p.xy) - r) <= 1e-9


class TestLocalFrame:
    @pytest.mark.parametrize("p0, pf, want", [
        ((0, 0, 0), (5, 2, 1), (5, 2, 1)),
        ((1, 1, math.pi / 2), (1, 3, math.pi / 2), (2, 0, 0)),
        ((10, -4, 0.3), (10, -4, 0.3), (0, 0, 0)),
    ])
    def test_examples(self, p0, pf, want):
        got = to_local_frame(Pose(*p0), Pose(*pf))
        assert close(got.as_tuple(), want)

    @given(poses(), poses())
    def test_round_trip(self, p0, pf):
        back = from_local_frame(p0, to_local_frame(p0, pf))
        assert close(back.xy, pf.xy, 1e-9)
        assert abs(normalize_angle(back.theta - pf.theta)) <= 1e-12

    @given(poses(), poses(), heading, coord, coord)
    def test_rigid_motion_invariance(self, p0, pf, a, tx, ty):
        def move(p):
            c, s = math.cos(a), math.sin(a)
            return Pose(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty, p.theta + a)

        before = to_local_frame(p0, pf)
        after = to_local_frame(move(p0), move(pf))
        assert close(before.xy, after.xy, 1e-12 * 4000 * 4)
        assert abs(normalize_angle(before.theta - after.theta)) <= 1e-12


class TestQuadrantProjection:
    def test_forward_examples(self):
        p, q = forward_project_to_q1((0, 0), Pose(5, 3, 0.7))
        assert q is Quadrant.Q1 and close(p.as_tuple(), (5, 3, 0.7))
        p, q = forward_project_to_q1((0, 0), Pose(-5, 3, 0.7))
        assert q is Quadrant.Q2 and close(p.as_tuple(), (5, 3, normalize_angle(2 * math.pi - 0.7)))
        p, q = forward_project_to_q1((0, 0), Pose(-5, -3, 0.7))
        assert q is Quadrant.Q3 and close(p.as_tuple(), (5, 3, 0.7))
        p, q = forward_project_to_q1((0, 0), Pose(5, -3, 0.7))
        assert q is Quadrant.Q4 and close(p.as_tuple(), (5, 3, normalize_angle(-0.7)))

    def test_boundary_follows_branch_order(self):
        # dx <= 0 and dy == 0 satisfies the Q2 and Q3 tests; Q2 comes first
        assert forward_project_to_q1((0, 0), Pose(-2, 0, 0.1))[1] is Quadrant.Q2
        assert forward_project_to_q1((0, 0), Pose(0, 0, 0.1))[1] is Quadrant.Q2
        assert forward_project_to_q1((0, 0), Pose(3, 0, 0.1))[1] is Quadrant.Q4
        assert forward_project_to_q1((0, 0), Pose(0, -3, 0.1))[1] is Quadrant.Q3

    def test_backward_examples(self):
        lsr = RsPath((PathSegment(L, 1, 1.0), PathSegment(S, 1, 2.0), PathSegment(R, 1, 3.0)))
        assert backward_project_from_q1(lsr, Quadrant.Q1) == lsr
        q3 = backward_project_from_q1(lsr, Quadrant.Q3)
        assert [(s.kind, s.direction, s.length) for s in q3.segments] == [
            (R, -1, 1.0), (S, -1, 2.0), (L, -1, 3.0)]
        ls = RsPath((PathSegment(L, 1, 1.0), PathSegment(S, 1, 2.0)))
        q4 = backward_project_from_q1(ls, Quadrant.Q4)
        assert [(s.kind, s.direction) for s in q4.segments] == [(R, 1), (S, 1)]
        q2 = backward_project_from_q1(ls, Quadrant.Q2)
        assert [(s.kind, s.direction) for s in q2.segments] == [(L, -1), (S, -1)]

    @given(poses())
    def test_projected_goal_in_first_quadrant(self, pf):
        p, q = forward_project_to_q1((0, 0), pf)
        assert p.x >= 0 and p.y >= 0
        if q is Quadrant.Q1:
            assert p == pf


class TestPathTypes:
    def test_total_length_is_sum(self):
        p = RsPath((PathSegment(L, 1, 0.5), PathSegment(S, -1, 2.25)))
        assert p.total_length == 2.75
        assert p.word == "l+s-"

    def test_segment_validation(self):
        with pytest.raises(ValueError):
            PathSegment(L, 0, 1.0)
        with pytest.raises(ValueError):
            PathSegment(L, 1, -1.0)
        with pytest.raises(ValueError):
            RsPath(tuple(PathSegment(S, 1, 1.0) for _ in range(6)))

    def test_arc_angle_accessor(self):
        assert PathSegment(L, 1, math.pi).angle(2.0) == pytest.approx(math.pi / 2)
        assert PathSegment(S, 1, 3.0).angle(2.0) == 0.0
