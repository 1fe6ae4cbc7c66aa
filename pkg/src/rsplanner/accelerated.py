"""Partitioned Reeds-Shepp solver: one path type evaluated per query.

The goal is moved into the start's local frame and mirrored into the first
quadrant. A decision tree over circle-center distances and angles then
selects a single path type whose closed-form segment lengths are evaluated
and mirrored back.

Types P1..P20 cover almost all of the first quadrant. P21 and P22 are the
mirror images of P14 and P16 and are needed in thin pockets of the
close-range set where neither P14 nor P18 (respectively P16) is optimal.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from . import _accel as ak
from . import _pipeline as pl
from .errors import InternalInconsistencyError, check_radius
from .geometry import Pose, RsPath, path_from_signed, to_local_frame

Point = Tuple[float, float]


class PathTypeId(Enum):
    """Path types with their word templates.

    ``q`` marks a fixed quarter-turn arc; ``U`` marks the repeated middle
    arc length of four-arc words.
    """

    P1 = (1, "l+s+r+")
    P2 = (2, "l+s+l+")
    P3 = (3, "l+s+l(q)+r-")
    P4 = (4, "l+s+r(q)+l-")
    P5 = (5, "r+l(q)-s-r-")
    P6 = (6, "r+l(q)-s-l-")
    P7 = (7, "r+s+l+")
    P8 = (8, "r+s+l(q)+r-")
    P9 = (9, "r-l(q)+s+r(q)+l-")
    P10 = (10, "r-l(q)+s+r+")
    P11 = (11, "r-l(q)+s+l+")
    P12 = (12, "r+l(q)-s-r(q)-l+")
    P13 = (13, "r-l(U)+r(U)+l-")
    P14 = (14, "r-l+r+")
    P15 = (15, "l+r-l+")
    P16 = (16, "l+r+l-")
    P17 = (17, "r+l(U)-r(U)-l+")
    P18 = (18, "l-r+l-")
    P19 = (19, "l-r(U)-l(U)+r+")
    P20 = (20, "l+r(U)+l(U)-r-")
    P21 = (21, "r+l-r-")
    P22 = (22, "r+l+r-")

    @property
    def number(self) -> int:
        return self.value[0]

    @property
    def template(self) -> str:
        return self.value[1]

    @classmethod
    def from_number(cls, n: int) -> "PathTypeId":
        return _BY_NUMBER[int(n)]

    def __str__(self) -> str:
        return self.name


_BY_NUMBER = {t.number: t for t in PathTypeId}

# Slots of the free (T, U, V) parameters inside each type's five-slot word.
_FREE = {n: (0, 1, 2) for n in range(1, 23)}
_FREE.update({3: (0, 1, 3), 4: (0, 1, 3), 8: (0, 1, 3),
              5: (0, 2, 3), 6: (0, 2, 3), 10: (0, 2, 3), 11: (0, 2, 3),
              9: (0, 2, 4), 12: (0, 2, 4),
              13: (0, 1, 3), 17: (0, 1, 3), 19: (0, 1, 3), 20: (0, 1, 3)})


@dataclass(frozen=True)
class TypeLengths:
    """Metric lengths of a type's free parameters."""

    T: float
    U: float
    V: float


@dataclass(frozen=True)
class DerivedQuantities:
    """Inputs of the partition predicates, in metric units.

    ``alpha`` and ``gamma`` come from arc-cosines that may be out of domain;
    when that happens the value is ``None`` and the matching ``*_defined``
    flag is False. ``O`` is ``None`` whenever ``gamma`` is.
    """

    c0L: Point
    c0R: Point
    cmL: Point
    cmR: Point
    LL: float
    LR: float
    RL: float
    RR: float
    K: float
    angle_LfL0: float
    angle_RfL0: float
    angle_LfR0: float
    angle_R0Lf: float
    t1: float
    t2: float
    d1: float
    beta0: float
    beta: float
    beta1: float
    beta2: float
    beta3: float
    alpha: Optional[float]
    alpha_defined: bool
    gamma: Optional[float]
    gamma_defined: bool
    O: Optional[float]

    @classmethod
    def _from_kernel(cls, q) -> "DerivedQuantities":
        return cls(
            c0L=(q.c0Lx, q.c0Ly), c0R=(q.c0Rx, q.c0Ry),
            cmL=(q.cmLx, q.cmLy), cmR=(q.cmRx, q.cmRy),
            LL=q.LL, LR=q.LR, RL=q.RL, RR=q.RR, K=q.K,
            angle_LfL0=q.angle_LfL0, angle_RfL0=q.angle_RfL0,
            angle_LfR0=q.angle_LfR0, angle_R0Lf=q.angle_R0Lf,
            t1=q.t1, t2=q.t2, d1=q.d1,
            beta0=q.beta0, beta=q.beta, beta1=q.beta1, beta2=q.beta2, beta3=q.beta3,
            alpha=q.alpha if q.alpha_defined else None, alpha_defined=bool(q.alpha_defined),
            gamma=q.gamma if q.gamma_defined else None, gamma_defined=bool(q.gamma_defined),
            O=q.O if q.gamma_defined else None,
        )

    def _kernel(self):
        return ak.DerivedQuantities(
            self.c0L[0], self.c0L[1], self.c0R[0], self.c0R[1],
            self.cmL[0], self.cmL[1], self.cmR[0], self.cmR[1],
            self.LL, self.LR, self.RL, self.RR, self.K,
            self.angle_LfL0, self.angle_RfL0, self.angle_LfR0, self.angle_R0Lf,
            self.t1, self.t2, self.d1,
            self.beta0, self.beta, self.beta1, self.beta2, self.beta3,
            self.alpha if self.alpha_defined else 0.0, self.alpha_defined,
            self.gamma if self.gamma_defined else 0.0, self.gamma_defined,
            self.O if self.gamma_defined else 0.0,
        )


def _rel(p0_l: Pose, pm_l: Pose) -> Pose:
    # the tree is written for a start at the origin with zero heading
    if p0_l.x == 0.0 and p0_l.y == 0.0 and p0_l.theta == 0.0:
        return pm_l
    return to_local_frame(p0_l, pm_l)


def derive_quantities(p0_l: Pose, pm_l: Pose, r: float) -> DerivedQuantities:
    """Compute every predicate input for a first-quadrant goal.

    Args:
        p0_l: Local start pose, normally the origin with zero heading.
        pm_l: Goal mirrored into the first quadrant.
        r: Turning radius.
    """
    r = check_radius(r)
    g = _rel(p0_l, pm_l)
    return DerivedQuantities._from_kernel(ak.derive(0.0, 0.0, 0.0, g.x, g.y, g.theta, r))


def is_in_set_b(q: DerivedQuantities, r: float) -> bool:
    """True when the turning circles are close enough for CCC-like words."""
    return bool(ak.in_set_b(q._kernel(), check_radius(r)))


def classify_set_a(p0_l: Pose, pm_l: Pose, q: DerivedQuantities, r: float) -> PathTypeId:
    """Path type for a goal outside the close-range set (P1..P12)."""
    g = _rel(p0_l, pm_l)
    return PathTypeId.from_number(ak.classify_a(g.x, g.y, g.theta, q._kernel(), check_radius(r)))


def classify_set_b(p0_l: Pose, pm_l: Pose, q: DerivedQuantities, r: float) -> PathTypeId:
    """Path type for a close-range goal (P9, P12..P22).

    A few leaves compare the lengths of two candidate types; those lengths
    are evaluated only when the leaf is reached.
    """
    g = _rel(p0_l, pm_l)
    return PathTypeId.from_number(ak.classify_b(g.x, g.y, g.theta, q._kernel(), check_radius(r)))


def classify(p0_l: Pose, pm_l: Pose, r: float) -> PathTypeId:
    """Dispatch a first-quadrant goal to exactly one path type."""
    r = check_radius(r)
    g = _rel(p0_l, pm_l)
    return PathTypeId.from_number(ak.classify(g.x, g.y, g.theta, r))


def _type_signed(t: PathTypeId, g: Pose, r: float) -> np.ndarray:
    seg = np.zeros(5)
    if not ak.type_segments(t.number, g.x / r, g.y / r, g.theta, seg):
        raise InternalInconsistencyError(
            f"{t.name} has no solution for goal ({g.x!r}, {g.y!r}, {g.theta!r}), r={r!r}")
    return seg


def type_lengths(t: PathTypeId, p0_l: Pose, pm_l: Pose, r: float) -> TypeLengths:
    """Metric ``(T, U, V)`` of type ``t`` for the given goal."""
    r = check_radius(r)
    seg = _type_signed(t, _rel(p0_l, pm_l), r)
    i, j, k = _FREE[t.number]
    return TypeLengths(abs(seg[i]) * r, abs(seg[j]) * r, abs(seg[k]) * r)


def solve_type(t: PathTypeId, p0_l: Pose, pm_l: Pose, r: float) -> RsPath:
    """Instantiate the word of type ``t`` for a first-quadrant goal.

    Zero-length segments are kept so the result always follows the type's
    template.

    Raises:
        InternalInconsistencyError: If the type's formula has no solution,
            which means ``t`` was not the dispatched type for this goal.
    """
    r = check_radius(r)
    t = PathTypeId(t) if not isinstance(t, PathTypeId) else t
    seg = _type_signed(t, _rel(p0_l, pm_l), r)
    kinds = ak.TYPE_WORDS[t.number, 0]
    return path_from_signed(pl.WORD_KINDS[kinds], seg, r, type_id=t.name)


def solve(p0: Pose, pf: Pose, r: float) -> RsPath:
    """Shortest Reeds-Shepp path from ``p0`` to ``pf``.

    Only the dispatched type is evaluated. The returned path keeps the
    type's full template (degenerate segments have length 0) except when
    ``p0 == pf``, which yields an empty path.

    Raises:
        InvalidRadiusError: If ``r`` is not positive and finite.
        InternalInconsistencyError: If the dispatched type is infeasible.
    """
    r = check_radius(r)
    if p0 == pf:
        return RsPath((), None)
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    t = pl.solve_global(p0.x, p0.y, p0.theta, pf.x, pf.y, pf.theta, r, kinds, seg, True)
    if t < 0:
        raise InternalInconsistencyError(
            f"P{-t} was dispatched but has no solution for {p0} -> {pf}, r={r!r}")
    return path_from_signed(kinds, seg, r, type_id=PathTypeId.from_number(t).name)


def solve_length(p0: Pose, pf: Pose, r: float) -> float:
    """Length of :func:`solve` without building the path object."""
    return solve(p0, pf, r).total_length


def dispatched_type(p0: Pose, pf: Pose, r: float) -> PathTypeId:
    """Type id :func:`solve` would use for this query."""
    r = check_radius(r)
    x, y, th = pl.to_local(p0.x, p0.y, p0.theta, pf.x, pf.y, pf.theta)
    xm, ym, thm, _ = pl.fold_q1(x, y, th)
    return PathTypeId.from_number(ak.classify(xm, ym, thm, r))


__all__ = [
    "PathTypeId", "TypeLengths", "DerivedQuantities", "derive_quantities",
    "is_in_set_b", "classify_set_a", "classify_set_b", "classify", "type_lengths",
    "solve_type", "solve", "solve_length", "dispatched_type",
]
