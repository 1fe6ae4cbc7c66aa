import math

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rsplanner.geometry import Pose

settings.register_profile(
    "default", max_examples=200, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

coord = st.floats(min_value=-1000, max_value=1000, allow_nan=False, allow_infinity=False)
near = st.floats(min_value=-8, max_value=8, allow_nan=False, allow_infinity=False)
heading = st.floats(min_value=-math.pi, max_value=math.pi, exclude_max=True,
                    allow_nan=False, allow_infinity=False)
radius = st.floats(min_value=0.5, max_value=100, allow_nan=False, allow_infinity=False)


@st.composite
def poses(draw, xy=coord):
    return Pose(draw(xy), draw(xy), draw(heading))


_ACCEPTANCE_LINES = {}


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[key])


def near_start(p0, pf, r, tol=1e-9):
    """True when ``pf`` is within ``tol * r`` of ``p0`` but not equal to it.

    Within about ``1e-10 * r`` of the start the closed-form words cannot
    resolve the goal and lengths are only good to about ``1e-8 * r``. A bit
    further out the length still grows like a square root of the offset, so
    roundoff in the inputs is strongly amplified.
    """
    from rsplanner.geometry import normalize_angle, to_local_frame

    g = to_local_frame(p0, pf)
    near_xy = max(abs(g.x), abs(g.y)) <= tol * r
    near_th = abs(normalize_angle(pf.theta - p0.theta)) <= tol
    return near_xy and near_th and p0 != pf
