"""Exhaustive classical Reeds-Shepp solver.

Every classical word formula is evaluated and the shortest feasible one wins.
This is slow by design: it is the ground truth the partitioned solver is
checked against, and the baseline it is timed against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import _pipeline as pl
from . import _words as w
from .errors import DomainError, check_radius
from .geometry import Pose, RsPath, SegmentKind, path_from_signed

_KIND = {w.LEFT: SegmentKind.LEFT, w.STRAIGHT: SegmentKind.STRAIGHT, w.RIGHT: SegmentKind.RIGHT}

# Slots holding the free parameters (t, u, v) of each formula group; the
# remaining slots are either repeats of u or fixed quarter turns.
_FREE_SLOTS = {
    0: (0, 1, 2), 1: (0, 1, 2),  # CSC
    2: (0, 1, 2), 3: (0, 1, 2),  # CCC
    4: (0, 1, 3), 5: (0, 1, 3),  # CCCC
    6: (0, 2, 3), 7: (0, 2, 3),  # CCSC
    8: (0, 1, 3), 9: (0, 1, 3),  # CSCC
    10: (0, 2, 4),  # CCSCC
}

# Goal-reach tolerance for sign-relaxed formulas, normalized units.
_REACH_TOL = 1e-9
# Segments shorter than this are dropped from word labels.
_ZERO_SEG = 1e-12


@dataclass(frozen=True)
class CandidatePath:
    """One evaluated word in normalized units (turning radius 1).

    Attributes:
        word: ``(kind, direction)`` per non-degenerate segment.
        lengths: Free parameters ``(t, u, v)`` of the word's family.
        total: Normalized length.
        feasible: Whether the formula produced a valid path to the goal.
        signed: All five signed segment lengths, zero padded.
        formula: Index of the classical formula that produced it.
    """

    word: Tuple[Tuple[SegmentKind, int], ...]
    lengths: Tuple[float, float, float]
    total: float
    feasible: bool
    signed: Tuple[float, ...] = ()
    formula: int = -1

    @property
    def label(self) -> str:
        return "".join(f"{k.value}{'+' if d > 0 else '-'}" for k, d in self.word)

    def to_path(self, r: float = 1.0) -> RsPath:
        """Metric :class:`RsPath` for turning radius ``r``."""
        return path_from_signed(w.WORD_KINDS[self.formula], self.signed, r,
                                type_id=self.label, drop_zero=True)


def _local(p0: Pose, pf: Pose, r: float):
    x, y, th = pl.to_local(p0.x, p0.y, p0.theta, pf.x, pf.y, pf.theta)
    return x / r, y / r, th


def _word_of(idx: int, seg) -> Tuple[Tuple[SegmentKind, int], ...]:
    out = []
    for k, a in zip(w.WORD_KINDS[idx], seg):
        if k == w.NONE or abs(a) <= _ZERO_SEG:
            continue
        out.append((_KIND[int(k)], 1 if a > 0 else -1))
    return tuple(out)


def _candidate(idx: int, seg, feasible: bool) -> CandidatePath:
    slots = _FREE_SLOTS[idx // 4]
    return CandidatePath(
        word=_word_of(idx, seg),
        lengths=tuple(abs(float(seg[i])) for i in slots),
        total=float(np.abs(seg).sum()),
        feasible=feasible,
        signed=tuple(float(a) for a in seg),
        formula=idx,
    )


def solve_exhaustive(p0: Pose, pf: Pose, r: float) -> RsPath:
    """Shortest path by evaluating every classical word.

    Zero-length segments are dropped, so a pure straight goal yields a
    single ``s+`` segment and ``p0 == pf`` yields an empty path.

    Args:
        p0: Start pose.
        pf: Goal pose.
        r: Turning radius.

    Returns:
        The optimal path; ``type_id`` holds its word label.

    Raises:
        InvalidRadiusError: If ``r`` is not positive and finite.
    """
    r = check_radius(r)
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    pl.solve_global(p0.x, p0.y, p0.theta, pf.x, pf.y, pf.theta, r, kinds, seg, False)
    path = path_from_signed(kinds, seg, r, drop_zero=True)
    return RsPath(path.segments, path.word)


def enumerate_optima(p0: Pose, pf: Pose, r: float, tol: float = 1e-9) -> List[CandidatePath]:
    """All distinct words whose length is within ``tol`` of the optimum.

    Besides the classical words this also evaluates every formula with its
    travel-direction checks switched off. Those relaxed solutions are kept
    only when integration confirms they reach the goal, which surfaces
    co-optimal words with extra cusps that the classical set omits.

    Args:
        p0: Start pose.
        pf: Goal pose.
        r: Turning radius.
        tol: Metric length slack above the optimum.

    Returns:
        Candidates sorted by length then label; duplicates (same word and
        segment lengths) are merged.
    """
    r = check_radius(r)
    tol = float(tol)
    if not (tol >= 0.0) or not math.isfinite(tol):
        raise DomainError(f"tol must be finite and >= 0, got {tol!r}")
    xn, yn, th = _local(p0, pf, r)

    cands = []
    for strict in (True, False):
        table = np.zeros((w.N_WORDS, 5))
        feas = np.zeros(w.N_WORDS, dtype=np.bool_)
        w.all_words(xn, yn, th, table, feas, strict)
        for idx in range(w.N_WORDS):
            if not feas[idx]:
                continue
            seg = table[idx]
            ex, ey, et = pl.integrate_signed(0.0, 0.0, 0.0, w.WORD_KINDS[idx], seg, 1.0)
            if math.hypot(ex - xn, ey - yn) > _REACH_TOL or abs(pl.wrap(et - th)) > _REACH_TOL:
                continue
            cands.append(_candidate(idx, seg.copy(), True))
    if not cands:  # pragma: no cover - the classical set is complete
        return []

    best = min(c.total for c in cands)
    seen = set()
    out = []
    for c in sorted(cands, key=lambda c: (c.total, c.label)):
        if (c.total - best) * r > tol:
            continue
        key = (c.label, tuple(round(abs(a), 9) for a in c.signed if abs(a) > _ZERO_SEG))
        if key in seen:
            continue
        seen.add(key)
        out.append(c)
    return out
