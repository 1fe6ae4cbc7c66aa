"""Exact forward simulation of Reeds-Shepp words.

The vehicle moves at unit speed, so arclength and travel time coincide. Arcs
are composed in closed form (rotation about the turning center), never by
numeric stepping.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import List, Sequence

from .errors import DomainError, check_radius
from .geometry import Pose, RsPath, SegmentKind, normalize_angle


@dataclass(frozen=True)
class EndpointError:
    """Gap between an integrated endpoint and the requested goal."""

    position_error: float
    heading_error: float


def _advance(x: float, y: float, th: float, kind: SegmentKind, signed_len: float, r: float):
    """Move ``signed_len`` (metric, sign = direction) along one primitive."""
    if kind is SegmentKind.STRAIGHT:
        return x + signed_len * math.cos(th), y + signed_len * math.sin(th), th
    a = signed_len / r
    s, c = math.sin(th), math.cos(th)
    if kind is SegmentKind.LEFT:
        cx, cy = x - r * s, y + r * c
        th2 = th + a
        return cx + r * math.sin(th2), cy - r * math.cos(th2), th2
    cx, cy = x + r * s, y - r * c
    th2 = th - a
    return cx - r * math.sin(th2), cy + r * math.cos(th2), th2


def integrate(p0: Pose, path: RsPath, r: float) -> Pose:
    """Endpoint reached by driving ``path`` from ``p0``.

    Args:
        p0: Start pose.
        path: Word with metric segment lengths.
        r: Turning radius.

    Returns:
        The final pose (heading normalized).

    Raises:
        InvalidRadiusError: If ``r`` is not positive and finite.
    """
    r = check_radius(r)
    x, y, th = p0.x, p0.y, p0.theta
    for seg in path.segments:
        if seg.length == 0.0:
            continue
        x, y, th = _advance(x, y, th, seg.kind, seg.signed_length, r)
    return Pose(x, y, th)


def sample_polyline(p0: Pose, path: RsPath, r: float, ds: float) -> List[Pose]:
    """Poses along ``path`` spaced at most ``ds`` apart in arclength.

    Both endpoints are included and the last pose is bit-identical to
    :func:`integrate`. Each segment is split into ``ceil(length / ds)`` equal
    steps measured from the segment's own start pose.

    Raises:
        DomainError: If ``ds`` is not a positive finite number.
    """
    r = check_radius(r)
    ds = float(ds)
    if not (ds > 0.0) or not math.isfinite(ds):
        raise DomainError(f"ds must be finite and > 0, got {ds!r}")
    out = [p0]
    x, y, th = p0.x, p0.y, p0.theta
    for seg in path.segments:
        if seg.length == 0.0:
            continue
        n = max(1, math.ceil(seg.length / ds))
        for k in range(1, n):
            px, py, pth = _advance(x, y, th, seg.kind, seg.direction * seg.length * k / n, r)
            out.append(Pose(px, py, pth))
        x, y, th = _advance(x, y, th, seg.kind, seg.signed_length, r)
        out.append(Pose(x, y, th))
    return out


def polyline_arclengths(poses: Sequence[Pose], path: RsPath, ds: float) -> List[float]:
    """Cumulative arclength of each pose returned by :func:`sample_polyline`."""
    s = [0.0]
    acc = 0.0
    for seg in path.segments:
        if seg.length == 0.0:
            continue
        n = max(1, math.ceil(seg.length / ds))
        for k in range(1, n + 1):
            s.append(acc + seg.length * k / n)
        acc += seg.length
    if len(s) != len(poses):
        raise ValueError("poses do not come from this path and ds")
    return s


def polyline_csv(poses: Sequence[Pose], arclengths: Sequence[float]) -> str:
    """Serialize a polyline as CSV with header ``s,x,y,theta``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["s", "x", "y", "theta"])
    for s, p in zip(arclengths, poses):
        w.writerow([repr(s), repr(p.x), repr(p.y), repr(p.theta)])
    return buf.getvalue()


def endpoint_error(p0: Pose, path: RsPath, pf: Pose, r: float) -> EndpointError:
    """Position and heading gap between ``integrate(p0, path, r)`` and ``pf``."""
    end = integrate(p0, path, r)
    return EndpointError(
        position_error=math.hypot(end.x - pf.x, end.y - pf.y),
        heading_error=abs(normalize_angle(end.theta - pf.theta)),
    )
