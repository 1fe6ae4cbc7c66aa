"""Poses, path words, turning circles and the quadrant folding used by the
accelerated solver.

Headings live in ``[-pi, pi)``. Segment lengths are metric (arc length for
turns), so ``RsPath.total_length`` is a plain sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Iterable, Optional, Tuple

from .errors import DomainError, check_radius

Point = Tuple[float, float]

TWO_PI = 2.0 * math.pi


def normalize_angle(a: float) -> float:
    """Wrap an angle into ``[-pi, pi)``.

    Args:
        a: Angle in radians.

    Returns:
        The equivalent angle in ``[-pi, pi)``.

    Raises:
        DomainError: If ``a`` is NaN or infinite.
    """
    a = float(a)
    if not math.isfinite(a):
        raise DomainError(f"angle must be finite, got {a!r}")
    if -math.pi <= a < math.pi:  # keep full precision of small angles
        return a
    v = math.fmod(a + math.pi, TWO_PI)
    if v < 0.0:
        v += TWO_PI
    v -= math.pi
    # fmod can land exactly on pi after the shift for inputs like -pi - eps
    if v >= math.pi:
        v -= TWO_PI
    return v


@dataclass(frozen=True)
class Pose:
    """Planar configuration of the rear-axle center.

    ``theta`` is normalized on construction, so ``Pose(0, 0, 2*pi).theta``
    is ``0.0``.
    """

    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self):
        x, y = float(self.x), float(self.y)
        if not (math.isfinite(x) and math.isfinite(y)):
            raise DomainError(f"pose position must be finite, got ({x!r}, {y!r})")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "theta", normalize_angle(self.theta))

    @property
    def xy(self) -> Point:
        return (self.x, self.y)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.theta)


@dataclass(frozen=True)
class TurningCircles:
    """Centers of the left- and right-hand turning circles of a pose."""

    c_left: Point
    c_right: Point
    radius: float


class SegmentKind(str, Enum):
    LEFT = "l"
    RIGHT = "r"
    STRAIGHT = "s"

    def mirrored(self) -> "SegmentKind":
        """Left and right swapped; straight is unchanged."""
        if self is SegmentKind.LEFT:
            return SegmentKind.RIGHT
        if self is SegmentKind.RIGHT:
            return SegmentKind.LEFT
        return self


@dataclass(frozen=True)
class PathSegment:
    """One motion primitive.

    Attributes:
        kind: Left arc, right arc or straight line.
        direction: ``+1`` forward, ``-1`` reverse.
        length: Metric length, never negative.
    """

    kind: SegmentKind
    direction: int
    length: float

    def __post_init__(self):
        object.__setattr__(self, "kind", SegmentKind(self.kind))
        if self.direction not in (1, -1):
            raise ValueError(f"direction must be +1 or -1, got {self.direction!r}")
        length = float(self.length)
        if not math.isfinite(length) or length < 0.0:
            raise ValueError(f"segment length must be finite and >= 0, got {length!r}")
        object.__setattr__(self, "length", length)

    def angle(self, r: float) -> float:
        """Central angle swept by an arc of radius ``r`` (0 for straights)."""
        if self.kind is SegmentKind.STRAIGHT:
            return 0.0
        return self.length / r

    @property
    def signed_length(self) -> float:
        return self.direction * self.length

    @property
    def label(self) -> str:
        return f"{self.kind.value}{'+' if self.direction > 0 else '-'}"


@dataclass(frozen=True)
class RsPath:
    """A Reeds-Shepp word with metric segment lengths.

    Attributes:
        segments: Up to five segments, in travel order.
        type_id: Accelerated type name (``"P1"`` ...) or a word label for
            paths from the exhaustive solver.
        total_length: Sum of the segment lengths, computed on construction.
    """

    segments: Tuple[PathSegment, ...] = ()
    type_id: Optional[str] = None
    total_length: float = field(init=False)

    def __post_init__(self):
        segs = tuple(self.segments)
        if len(segs) > 5:
            raise ValueError(f"a path has at most 5 segments, got {len(segs)}")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "total_length", math.fsum(s.length for s in segs))

    @property
    def word(self) -> str:
        """Compact word label such as ``"l+s+r+"``."""
        return "".join(s.label for s in self.segments)

    def __len__(self) -> int:
        return len(self.segments)


class Quadrant(IntEnum):
    Q1 = 1
    Q2 = 2
    Q3 = 3
    Q4 = 4


def turning_circle_centers(p: Pose, r: float) -> TurningCircles:
    """Left and right turning-circle centers of ``p``.

    The right center sits at bearing ``theta - pi/2`` and the left one at
    ``theta + pi/2``, both at distance ``r``.

    Raises:
        InvalidRadiusError: If ``r`` is not a finite positive number.
    """
    r = check_radius(r)
    c = math.cos(p.theta - math.pi / 2)
    s = math.sin(p.theta - math.pi / 2)
    return TurningCircles(
        c_left=(p.x - r * c, p.y - r * s),
        c_right=(p.x + r * c, p.y + r * s),
        radius=r,
    )


def to_local_frame(p0: Pose, pf: Pose) -> Pose:
    """Express ``pf`` in the frame attached to ``p0``."""
    c, s = math.cos(p0.theta), math.sin(p0.theta)
    dx, dy = pf.x - p0.x, pf.y - p0.y
    return Pose(c * dx + s * dy, -s * dx + c * dy, pf.theta - p0.theta)


def from_local_frame(p0: Pose, local: Pose) -> Pose:
    """Inverse of :func:`to_local_frame`."""
    c, s = math.cos(p0.theta), math.sin(p0.theta)
    return Pose(
        p0.x + c * local.x - s * local.y,
        p0.y + s * local.x + c * local.y,
        p0.theta + local.theta,
    )


def forward_project_to_q1(start_xy: Point, pf_local: Pose) -> Tuple[Pose, Quadrant]:
    """Mirror a local goal into the first quadrant around ``start_xy``.

    The quadrant tests run in order Q1, Q2, Q3, Q4 with the first match
    winning, so ``dx <= 0, dy == 0`` is treated as Q2.

    Returns:
        The mirrored pose and the quadrant the goal came from.
    """
    x0, y0 = start_xy
    dx, dy = pf_local.x - x0, pf_local.y - y0
    x, y, th = pf_local.x, pf_local.y, pf_local.theta
    if dx > 0 and dy > 0:
        return pf_local, Quadrant.Q1
    if dx <= 0 and dy >= 0:
        return Pose(2 * x0 - x, y, -th), Quadrant.Q2
    if dx <= 0 and dy <= 0:
        return Pose(2 * x0 - x, 2 * y0 - y, th), Quadrant.Q3
    return Pose(x, 2 * y0 - y, -th), Quadrant.Q4


def backward_project_from_q1(path: RsPath, q: Quadrant) -> RsPath:
    """Undo :func:`forward_project_to_q1` on a solved word.

    Q2 flips every direction, Q4 swaps left and right, Q3 does both.
    Lengths are unchanged.
    """
    q = Quadrant(q)
    if q is Quadrant.Q1:
        return path
    flip = q in (Quadrant.Q2, Quadrant.Q3)
    swap = q in (Quadrant.Q3, Quadrant.Q4)
    segs = []
    for s in path.segments:
        kind = s.kind.mirrored() if swap else s.kind
        direction = -s.direction if flip else s.direction
        segs.append(PathSegment(kind, direction, s.length))
    return RsPath(tuple(segs), path.type_id)


def path_from_signed(kinds: Iterable[int], seg: Iterable[float], r: float,
                     type_id: Optional[str] = None, drop_zero: bool = False) -> RsPath:
    """Build an :class:`RsPath` from kernel output (kind codes, signed lengths).

    Args:
        kinds: Kind codes (1 left, 2 straight, 3 right, 0 unused).
        seg: Signed normalized lengths.
        r: Turning radius used to scale to metric lengths.
        type_id: Tag stored on the path.
        drop_zero: Skip segments of exactly zero length.
    """
    codes = {1: SegmentKind.LEFT, 2: SegmentKind.STRAIGHT, 3: SegmentKind.RIGHT}
    out = []
    for k, a in zip(kinds, seg):
        k = int(k)
        if k == 0:
            continue
        a = float(a)
        if drop_zero and a == 0.0:
            continue
        out.append(PathSegment(codes[k], -1 if math.copysign(1.0, a) < 0 else 1, abs(a) * r))
    return RsPath(tuple(out), type_id)


def path_to_signed(path: RsPath, r: float):
    """Kernel representation of a path: (kind codes, signed normalized lengths)."""
    codes = {SegmentKind.LEFT: 1, SegmentKind.STRAIGHT: 2, SegmentKind.RIGHT: 3}
    kinds = [0] * 5
    seg = [0.0] * 5
    for i, s in enumerate(path.segments):
        kinds[i] = codes[s.kind]
        seg[i] = s.direction * s.length / r
    return kinds, seg
