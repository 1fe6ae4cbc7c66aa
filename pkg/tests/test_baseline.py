import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rsplanner.baseline import enumerate_optima, solve_exhaustive
from rsplanner.errors import DomainError, InvalidRadiusError
from rsplanner.geometry import PathSegment, Pose, RsPath, SegmentKind, normalize_angle
from rsplanner.integrator import endpoint_error, integrate

from .conftest import near, poses, radius

L, R, S = SegmentKind.LEFT, SegmentKind.RIGHT, SegmentKind.STRAIGHT
CUSP_GOAL = Pose(0.05, 0.12, -1.5)


def test_straight_goal():
    p = solve_exhaustive(Pose(0, 0, 0), Pose(10, 0, 0), 1.0)
    assert [(s.kind, s.direction) for s in p.segments] == [(S, 1)]
    assert p.total_length == pytest.approx(10.0, abs=1e-12)


def test_cusp_length():
    p = solve_exhaustive(Pose(0, 0, 0), CUSP_GOAL, 1.0)
    assert p.total_length == pytest.approx(1.5, abs=1e-4)


def test_identity_is_empty():
    p = solve_exhaustive(Pose(3, 4, 1), Pose(3, 4, 1), 2.0)
    assert p.segments == () and p.total_length == 0.0


def test_lsl_closed_form():
    # left circle to left circle: tangent length between centers plus the net turn
    r, p0, pf = 5.0, Pose(0, 0, 0), Pose(40, 30, 1.0)
    c0 = (0.0, r)
    cf = (40 - r * math.sin(1.0), 30 + r * math.cos(1.0))
    want = math.dist(c0, cf) + r * 1.0
    assert solve_exhaustive(p0, pf, r).total_length == pytest.approx(want, rel=1e-14)


def test_invalid_radius():
    with pytest.raises(InvalidRadiusError):
        solve_exhaustive(Pose(0, 0, 0), Pose(1, 0, 0), -1.0)


@given(poses(near), poses(near), radius)
def test_reaches_goal(p0, pf, r):
    p = solve_exhaustive(p0, pf, r)
    err = endpoint_error(p0, p, pf, r)
    assert err.position_error <= 1e-9 * max(1.0, r)
    assert err.heading_error <= 1e-9


@given(poses(near), radius,
       st.lists(st.tuples(st.sampled_from([L, R, S]), st.sampled_from([1, -1]),
                          st.floats(min_value=0, max_value=4)), min_size=1, max_size=5))
def test_never_longer_than_any_drawn_path(p0, r, segs):
    # every concatenation of arcs and lines is a feasible path, so it bounds the optimum
    pth = RsPath(tuple(PathSegment(k, d, a * r) for k, d, a in segs))
    pf = integrate(p0, pth, r)
    assert solve_exhaustive(p0, pf, r).total_length <= pth.total_length + 1e-9 * max(1.0, r)


class TestEnumerateOptima:
    # known co-optimal words, values given to 4-5 decimals
    REFERENCE = {
        "l-r+l-": (0.32051, 0.67456, 0.50493),
        "l-r+l-r+": (0.2021, 0.5816, 0.1347),
        "r+l-r+": (0.4751, 0.7225, 0.3024),
    }

    def test_reference_words_present(self):
        opts = enumerate_optima(Pose(0, 0, 0), CUSP_GOAL, 1.0)
        by_label = {c.label: c for c in opts}
        assert len(opts) >= 3
        for label, triple in self.REFERENCE.items():
            assert label in by_label
            assert by_label[label].lengths == pytest.approx(triple, abs=1e-4)
        best = opts[0].total
        assert all(abs(c.total - best) <= 1e-9 for c in opts)
        assert best == pytest.approx(1.5, abs=1e-4)

    def test_every_candidate_reaches_goal(self):
        for c in enumerate_optima(Pose(0, 0, 0), CUSP_GOAL, 1.0):
            err = endpoint_error(Pose(0, 0, 0), c.to_path(1.0), CUSP_GOAL, 1.0)
            assert err.position_error <= 1e-9 and err.heading_error <= 1e-9

    def test_identity(self):
        opts = enumerate_optima(Pose(1, 2, 3), Pose(1, 2, 3), 1.0)
        assert len(opts) == 1
        assert opts[0].total == 0.0 and opts[0].word == ()

    def test_metric_lengths_scale(self):
        # normalized lengths do not depend on the radius
        a = enumerate_optima(Pose(0, 0, 0), CUSP_GOAL, 1.0)
        b = enumerate_optima(Pose(0, 0, 0), Pose(0.5, 1.2, -1.5), 10.0)
        assert [c.label for c in a] == [c.label for c in b]
        for x, y in zip(a, b):
            assert x.lengths == pytest.approx(y.lengths, abs=1e-12)

    def test_bad_tol(self):
        with pytest.raises(DomainError):
            enumerate_optima(Pose(0, 0, 0), CUSP_GOAL, 1.0, tol=-1.0)

    @given(poses(near), poses(near), radius)
    def test_minimum_matches_solver(self, p0, pf, r):
        opts = enumerate_optima(p0, pf, r)
        L_best = solve_exhaustive(p0, pf, r).total_length
        assert opts[0].total * r == pytest.approx(L_best, rel=1e-12, abs=1e-12)


def test_quarter_turn_arc_bound_does_not_hold():
    # a U-turn onto the adjacent lane needs a half-circle, longer than a quarter turn
    p = solve_exhaustive(Pose(0, 0, 0), Pose(0, 2, math.pi), 1.0)
    assert p.total_length == pytest.approx(math.pi, abs=1e-12)
    assert max(s.length for s in p.segments if s.kind is not S) > math.pi / 2
    assert abs(normalize_angle(integrate(Pose(0, 0, 0), p, 1.0).theta - math.pi)) < 1e-12
