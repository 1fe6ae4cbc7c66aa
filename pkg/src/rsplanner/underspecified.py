"""Shortest path to a goal position when the final heading is free.

The goal plane around the start splits into three regions, each with its
own closed-form optimal heading:

* ``R1``: the goal is reached by a right turn then a straight line, so the
  final heading is tangent to the start's right turning circle.
* ``R2``: an extra reverse turn first; the final straight is tangent to the
  start's left turning circle.
* ``R3``: close range, two arcs; the second right circle passes through the
  goal.

Headings come from complex-logarithm expressions. Both square-root branches
are evaluated and kept only if they satisfy the region's geometric equation;
if neither does, the equation is solved by bracketing and bisection and the
result is flagged.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, TextIO, Tuple, Union

import numpy as np

from . import _omega as ok
from . import accelerated
from .errors import DomainError, check_radius
from .geometry import Pose, RsPath, normalize_angle

Point = Tuple[float, float]

# Expected number of non-degenerate segments per region.
EXPECTED_SEGMENTS = {1: 2, 2: 3, 3: 2}


class Region(Enum):
    R1 = 1
    R2 = 2
    R3 = 3


@dataclass(frozen=True)
class OmegaSolution:
    """Free-heading answer.

    Attributes:
        omega: Optimal final heading in ``[-pi, pi)``.
        region: Region of the goal.
        path: Shortest path to ``(goal, omega)``.
        length: ``path.total_length``.
        fallback: True if the closed form was rejected and the heading came
            from bisection.
    """

    omega: float
    region: Region
    path: RsPath
    length: float
    fallback: bool = False


def _check_goal(goal) -> Point:
    gx, gy = float(goal[0]), float(goal[1])
    if not (math.isfinite(gx) and math.isfinite(gy)):
        raise DomainError(f"goal must be finite, got {goal!r}")
    return gx, gy


def classify_region(p0: Pose, goal: Point, r: float) -> Region:
    """Region of ``goal`` relative to ``p0``.

    Disk tests are closed. The tests are applied in order R1, R2, R3 and the
    first match wins, which makes the regions disjoint.

    Raises:
        InvalidRadiusError: If ``r`` is not positive and finite.
    """
    r = check_radius(r)
    gx, gy = _check_goal(goal)
    X, Y = ok.to_canonical(p0.x, p0.y, p0.theta, gx, gy)
    return Region(ok.region_q1(abs(X), abs(Y), r))


def region_predicates(X: float, Y: float, r: float) -> Tuple[bool, bool, bool]:
    """The three region tests for a canonical goal, without precedence.

    ``R1`` and ``R3`` are tested literally. ``R2`` is tested as "outside the
    enlarged left disk, below ``y = r`` and right of ``x = r``", which is
    what remains of its literal test once ``R1`` has taken precedence.
    Exactly one of the three holds for every goal.
    """
    dx, dy = abs(X), abs(Y)
    in_r = (dx - r) ** 2 + dy * dy <= r * r
    in_l = (dx + r) ** 2 + dy * dy <= 5.0 * r * r
    p1 = (not in_r) and (dy >= r or dx - r < 0.0)
    p2 = (not in_l) and dy < r and dx - r >= 0.0
    p3 = in_l and in_r
    return p1, p2, p3


def _closed_form(p0: Pose, goal: Point, r: float, region: Optional[Region]):
    gx, gy = _check_goal(goal)
    X, Y = ok.to_canonical(p0.x, p0.y, p0.theta, gx, gy)
    if X == 0.0 and Y == 0.0:
        return p0.theta, False, Region(ok.region_q1(0.0, 0.0, r))
    dx, dy = abs(X), abs(Y)
    reg = ok.region_q1(dx, dy, r) if region is None else Region(region).value
    h, fb, good = ok.heading_q1(dx, dy, r, reg, True)
    if not good:
        raise DomainError(f"no heading satisfies region {reg} for goal {goal!r}")
    h = ok.unmirror(h, X, Y)
    return normalize_angle(p0.theta + h - math.pi / 2), bool(fb), Region(reg)


def omega_closed_form(p0: Pose, goal: Point, r: float, region: Optional[Region] = None) -> float:
    """Optimal free final heading from the region's closed form.

    Args:
        p0: Start pose.
        goal: Goal position.
        r: Turning radius.
        region: Region whose formula to use; classified when omitted.

    Returns:
        The heading in ``[-pi, pi)``. For a goal at the start position the
        start heading is returned.

    Raises:
        DomainError: If neither the closed form nor bisection finds a
            heading satisfying the region's equation (wrong region given).
    """
    r = check_radius(r)
    return _closed_form(p0, goal, r, region)[0]


def solve_underspecified(p0: Pose, goal: Point, r: float) -> OmegaSolution:
    """Optimal heading, region and path for a free-heading goal."""
    r = check_radius(r)
    omega, fb, reg = _closed_form(p0, goal, r, None)
    gx, gy = _check_goal(goal)
    path = accelerated.solve(p0, Pose(gx, gy, omega), r)
    return OmegaSolution(omega, reg, path, path.total_length, fb)


def nominal_zero_segments(sol: OmegaSolution) -> Tuple[float, ...]:
    """Lengths of the segments a region's word does not need.

    The shortest ``len(path) - expected`` segments, where ``expected`` is
    two for R1 and R3 and three for R2.
    """
    lengths = sorted(s.length for s in sol.path.segments)
    extra = max(0, len(lengths) - EXPECTED_SEGMENTS[sol.region.value])
    return tuple(lengths[:extra])


def sweep_omega(p0: Pose, goal: Point, r: float, step_deg: float = 0.05,
                exhaustive: bool = True) -> Tuple[float, float]:
    """Brute-force heading search used as an oracle.

    Args:
        step_deg: Heading step in degrees over ``[-180, 180)``.
        exhaustive: Use the exhaustive solver instead of the partitioned one.

    Returns:
        ``(best_heading, best_length)``.
    """
    r = check_radius(r)
    if not step_deg > 0:
        raise DomainError("step must be > 0")
    gx, gy = _check_goal(goal)
    X, Y = ok.to_canonical(p0.x, p0.y, p0.theta, gx, gy)
    h, L = ok.sweep_canonical(X, Y, r, math.radians(step_deg), not exhaustive)
    return normalize_angle(p0.theta + h - math.pi / 2), float(L)


@dataclass
class OmegaGrid:
    """Per-cell optimal heading and length, row-major ``(height, width)``.

    Cell ``(ix, iy)`` is sampled at its center
    ``(origin_x + ix * cell_size, origin_y + iy * cell_size)``; row 0 is the
    bottom row.
    """

    p0: Pose
    r: float
    cell_size: float
    origin: Point
    omega: np.ndarray
    length: np.ndarray
    fallback: np.ndarray

    @property
    def width(self) -> int:
        return self.omega.shape[1]

    @property
    def height(self) -> int:
        return self.omega.shape[0]

    def cell_center(self, ix: int, iy: int) -> Point:
        return (self.origin[0] + ix * self.cell_size, self.origin[1] + iy * self.cell_size)

    def write_csv(self, fh: TextIO) -> None:
        """Write ``ix,iy,x,y,omega_rad,length`` rows, row-major from the bottom."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["ix", "iy", "x", "y", "omega_rad", "length"])
        for iy in range(self.height):
            yv = self.origin[1] + iy * self.cell_size
            om_row = self.omega[iy]
            len_row = self.length[iy]
            w.writerows(
                (ix, iy, repr(self.origin[0] + ix * self.cell_size), repr(yv),
                 repr(float(om_row[ix])), repr(float(len_row[ix])))
                for ix in range(self.width)
            )


def omega_grid(p0: Pose, width: int, height: int, cell_size: float, r: float,
               origin: Point = (0.0, 0.0)) -> OmegaGrid:
    """Optimal heading and length for every cell of a grid.

    Args:
        p0: Start pose in grid coordinates.
        width: Number of columns.
        height: Number of rows.
        cell_size: Cell pitch.
        r: Turning radius.
        origin: Center of cell ``(0, 0)``.

    Raises:
        DomainError: If the dimensions are not positive.
    """
    r = check_radius(r)
    if int(width) != width or int(height) != height or width < 1 or height < 1:
        raise DomainError(f"grid dimensions must be positive integers, got {width}x{height}")
    cell_size = float(cell_size)
    if not (cell_size > 0.0) or not math.isfinite(cell_size):
        raise DomainError(f"cell size must be finite and > 0, got {cell_size!r}")
    width, height = int(width), int(height)
    omega = np.empty((height, width))
    length = np.empty((height, width))
    fb = np.zeros((height, width), dtype=np.bool_)
    ok.grid_kernel(p0.x, p0.y, p0.theta, float(origin[0]), float(origin[1]), cell_size,
                   width, height, r, omega, length, fb)
    return OmegaGrid(p0, r, cell_size, (float(origin[0]), float(origin[1])), omega, length, fb)


def solve_many(p0s: np.ndarray, goals: np.ndarray, r: Union[float, np.ndarray]):
    """Vectorized free-heading solve.

    Args:
        p0s: ``(n, 3)`` start poses.
        goals: ``(n, 2)`` goal positions.
        r: Scalar or ``(n,)`` radii.

    Returns:
        ``(omega, length, region, fallback)`` arrays.
    """
    p0s = np.ascontiguousarray(p0s, dtype=float)
    goals = np.ascontiguousarray(goals, dtype=float)
    n = goals.shape[0]
    rr = np.broadcast_to(np.asarray(r, dtype=float), (n,)).copy()
    omega = np.empty(n)
    length = np.empty(n)
    region = np.empty(n, dtype=np.int64)
    fb = np.empty(n, dtype=np.bool_)
    ok.batch_solve(p0s[:, 0].copy(), p0s[:, 1].copy(), p0s[:, 2].copy(),
                   goals[:, 0].copy(), goals[:, 1].copy(), rr, omega, length, region, fb)
    return omega, length, region, fb


def sweep_many(p0s: np.ndarray, goals: np.ndarray, r, step_deg: float = 0.05,
               exhaustive: bool = False):
    """Vectorized :func:`sweep_omega`; returns ``(omega, length)`` arrays."""
    p0s = np.ascontiguousarray(p0s, dtype=float)
    goals = np.ascontiguousarray(goals, dtype=float)
    n = goals.shape[0]
    rr = np.broadcast_to(np.asarray(r, dtype=float), (n,)).copy()
    omega = np.empty(n)
    length = np.empty(n)
    ok.batch_sweep(p0s[:, 0].copy(), p0s[:, 1].copy(), p0s[:, 2].copy(),
                   goals[:, 0].copy(), goals[:, 1].copy(), rr, math.radians(step_deg),
                   not exhaustive, omega, length)
    return omega, length
