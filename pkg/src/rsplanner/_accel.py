"""Compiled kernels for the 20-type partitioned solver.

All inputs here are already in the start pose's local frame, start at the
origin with zero heading, and the goal mirrored into the first quadrant.
Distances are metric (turning radius ``r``); the per-type segment lengths are
returned in normalized units.
"""

import math
from typing import NamedTuple

import numpy as np

from ._jit import njit
from ._words import HALF_PI, PI, abs_total, eval_word

SQRT20 = math.sqrt(20.0)
ACOS_SLACK = 1e-12
# Two goals where many partitions meet and the tree's predicates and the
# single-type formulas are ill-conditioned: the start itself and the exact
# quarter turn (r, r, pi/2). Near them the shortest type is picked directly.
NEAR_START = 1e-3
NEAR_QUARTER = 1e-5

# P1..P22 -> formula indices of the classical word set (see _words.WORD_KINDS)
TYPE_WORDS = np.array(
    [
        [-1, -1],
        [4, -1], [0, -1], [39, -1], [33, -1], [26, -1],
        [30, -1], [6, -1], [35, -1], [43, -1], [27, -1],
        [31, -1], [42, -1], [23, -1], [11, -1], [8, 12],
        [13, -1], [22, -1], [9, 13], [17, -1], [16, -1],
        [10, -1], [15, -1],
    ],
    dtype=np.int64,
)
# Expected travel direction of each segment of P1..P20 (0 = unused slot).
TYPE_DIRS = np.array(
    [
        [0, 0, 0, 0, 0],
        [1, 1, 1, 0, 0], [1, 1, 1, 0, 0], [1, 1, 1, -1, 0], [1, 1, 1, -1, 0],
        [1, -1, -1, -1, 0], [1, -1, -1, -1, 0], [1, 1, 1, 0, 0], [1, 1, 1, -1, 0],
        [-1, 1, 1, 1, -1], [-1, 1, 1, 1, 0], [-1, 1, 1, 1, 0], [1, -1, -1, -1, 1],
        [-1, 1, 1, -1, 0], [-1, 1, 1, 0, 0], [1, -1, 1, 0, 0], [1, 1, -1, 0, 0],
        [1, -1, -1, 1, 0], [-1, 1, -1, 0, 0], [-1, -1, 1, 1, 0], [1, 1, -1, -1, 0],
        [1, -1, -1, 0, 0], [1, 1, -1, 0, 0],
    ],
    dtype=np.int64,
)


class DerivedQuantities(NamedTuple):
    """Every quantity the partition predicates read, in metric units."""

    c0Lx: float
    c0Ly: float
    c0Rx: float
    c0Ry: float
    cmLx: float
    cmLy: float
    cmRx: float
    cmRy: float
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
    alpha: float
    alpha_defined: bool
    gamma: float
    gamma_defined: bool
    O: float


@njit
def safe_acos(c):
    """acos that tolerates round-off past +-1; returns (value, defined)."""
    if c > 1.0:
        if c - 1.0 <= ACOS_SLACK:
            return 0.0, True
        return 0.0, False
    if c < -1.0:
        if -1.0 - c <= ACOS_SLACK:
            return PI, True
        return 0.0, False
    return math.acos(c), True


@njit
def derive(x0, y0, th0, x, y, th, r):
    s0 = math.sin(th0 - HALF_PI)
    k0 = math.cos(th0 - HALF_PI)
    c0Rx = x0 + r * k0
    c0Ry = y0 + r * s0
    c0Lx = x0 - r * k0
    c0Ly = y0 - r * s0
    sm = math.sin(th - HALF_PI)
    km = math.cos(th - HALF_PI)
    cmRx = x + r * km
    cmRy = y + r * sm
    cmLx = x - r * km
    cmLy = y - r * sm

    LL = math.hypot(c0Lx - cmLx, c0Ly - cmLy)
    LR = math.hypot(c0Lx - cmRx, c0Ly - cmRy)
    RL = math.hypot(c0Rx - cmLx, c0Ry - cmLy)
    RR = math.hypot(c0Rx - cmRx, c0Ry - cmRy)
    K = 2.0 * r * math.sqrt(2.0)

    angle_LfL0 = math.atan2(cmLy - c0Ly, cmLx - c0Lx)
    angle_RfL0 = math.atan2(cmRy - c0Ly, cmRx - c0Lx)
    angle_LfR0 = math.atan2(cmLy - c0Ry, cmLx - c0Rx)
    angle_R0Lf = math.atan2(c0Ry - cmLy, c0Rx - cmLx)

    # signed offsets along the goal heading line, from the goal to the
    # projection of the start circle centers
    hx = math.cos(th)
    hy = math.sin(th)
    t1 = (c0Lx - x) * hx + (c0Ly - y) * hy
    t2 = (c0Rx - x) * hx + (c0Ry - y) * hy
    d1 = abs((c0Rx - x) * hy - (c0Ry - y) * hx)

    beta0 = math.atan2(y - y0, x - x0)
    beta = th - HALF_PI - angle_R0Lf
    beta1 = HALF_PI - angle_LfR0
    beta2 = -th - beta1
    beta3 = angle_RfL0 + HALF_PI

    if RL > 0.0:
        alpha, alpha_defined = safe_acos((3.0 * r * r + 0.25 * RL * RL) / (2.0 * r * RL))
    else:
        alpha, alpha_defined = 0.0, False
    gamma, gamma_defined = safe_acos((0.5 * LR + r) / (2.0 * r))
    O = 4.0 * r * math.sin(0.5 * gamma) if gamma_defined else 0.0

    return DerivedQuantities(
        c0Lx, c0Ly, c0Rx, c0Ry, cmLx, cmLy, cmRx, cmRy,
        LL, LR, RL, RR, K,
        angle_LfL0, angle_RfL0, angle_LfR0, angle_R0Lf,
        t1, t2, d1,
        beta0, beta, beta1, beta2, beta3,
        alpha, alpha_defined, gamma, gamma_defined, O,
    )


@njit
def in_set_b(q, r):
    two_r = 2.0 * r
    p1 = q.RR <= q.K and q.LL <= q.K and q.LR <= two_r
    p2 = q.RR <= q.K and q.LL <= q.K and q.RL <= two_r
    p3 = q.LR <= two_r and q.LL <= q.K and q.RL <= two_r
    return p1 or p2 or p3


@njit
def type_segments(ptype, xn, yn, th, out):
    """Signed normalized segment lengths of type ``ptype``; False if infeasible.

    Types backed by two classical formulas keep the shorter feasible one whose
    travel directions agree with the type's template. For goals within
    roundoff of the start the formulas' own sign checks can reject the right
    answer, so a failed strict pass is repeated without them; the template
    check below still applies.
    """
    seg = np.empty(5)
    best = np.inf
    found = False
    for strict in (True, False):
        for j in range(2):
            idx = TYPE_WORDS[ptype, j]
            if idx < 0:
                break
            if not eval_word(idx, xn, yn, th, seg, strict):
                continue
            ok = True
            total = 0.0
            for i in range(5):
                d = TYPE_DIRS[ptype, i]
                total += abs(seg[i])
                if d * seg[i] < -1e-9:
                    ok = False
            if ok and total < best:
                best = total
                found = True
                for i in range(5):
                    out[i] = seg[i]
        if found:
            break
    return found


@njit
def _tuv(ptype, xn, yn, th):
    """Magnitudes (T, U, V) of the free segments of ``ptype``."""
    seg = np.zeros(5)
    if not type_segments(ptype, xn, yn, th, seg):
        return np.inf, np.inf, np.inf
    if ptype == 13 or ptype == 17 or ptype == 19 or ptype == 20:
        return abs(seg[0]), abs(seg[1]), abs(seg[3])
    return abs(seg[0]), abs(seg[1]), abs(seg[2])


@njit
def _shorter(pa, pb, xn, yn, th):
    """Pick the shorter of two competing types; ``pa`` wins ties."""
    seg = np.zeros(5)
    la = abs_total(seg) if type_segments(pa, xn, yn, th, seg) else np.inf
    lb = abs_total(seg) if type_segments(pb, xn, yn, th, seg) else np.inf
    return pb if lb < la else pa


@njit
def classify_a(x, y, th, q, r):
    two_r = 2.0 * r
    if th >= 0.0:
        if q.cmLy <= q.c0Ly and q.cmRy <= q.c0Ly:
            if q.t2 <= -two_r or q.d1 <= r:
                return 7
            return 8
        if th < abs(q.angle_LfL0):
            if th > q.angle_LfR0:
                return 11
            if q.cmRx >= two_r or q.cmRy <= q.c0Ly:
                return 1
            if abs(q.t2) <= two_r:
                return 9
            return 10
        if q.cmLx < 0.0:
            return 11
        if th > q.angle_LfL0 + HALF_PI:
            return 3
        return 2
    if th < 2.0 * q.beta0 - PI:
        if th < q.angle_R0Lf:
            return 6
        if abs(q.t2) <= two_r:
            return 12
        return 5
    if th >= q.angle_RfL0 or q.t1 <= -two_r:
        return 1
    if q.cmLx >= two_r:
        return 4
    return 9


@njit
def classify_b(x, y, th, q, r):
    two_r = 2.0 * r
    xn = x / r
    yn = y / r
    if q.RL >= SQRT20 * r:
        if th > 2.0 * q.beta0 - PI:
            return 9
        return 12
    if th >= 0.0:
        if th < HALF_PI:
            if q.alpha_defined and q.alpha >= q.beta:
                t13, u13, v13 = _tuv(13, xn, yn, th)
                t19, u19, v19 = _tuv(19, xn, yn, th)
                if t13 <= v19 or t13 + u13 <= 2.0 * u19:
                    return 13
                return 19
            if q.LR <= two_r and q.RL <= two_r:
                return 15
            if q.RL <= two_r or not q.gamma_defined or q.beta3 >= q.gamma:
                return _shorter(14, 22, xn, yn, th)
            return 19
        if q.LR <= two_r and q.RL <= two_r:
            return 15
        return _shorter(14, 22, xn, yn, th)
    if th >= 2.0 * q.angle_LfR0 - PI:
        if q.alpha_defined and q.alpha > q.beta1:
            t13, u13, v13 = _tuv(13, xn, yn, th)
            t20, u20, v20 = _tuv(20, xn, yn, th)
            if v13 <= t20 or t13 + u13 <= th + 2.0 * u20:
                return 13
            return 20
        if q.RL <= two_r:
            return _shorter(18, 21, xn, yn, th)
        if q.gamma_defined and q.O > q.LL and q.O > q.RR:
            return 20
        return 16
    if q.alpha_defined and q.alpha > q.beta2:
        t17, u17, v17 = _tuv(17, xn, yn, th)
        t20, u20, v20 = _tuv(20, xn, yn, th)
        if t17 <= t20 or t17 + u17 <= 2.0 * u20:
            return 17
        return 20
    if (q.gamma_defined and q.O <= q.RR) or q.RL <= two_r:
        return _shorter(18, 21, xn, yn, th)
    return 20


@njit
def _shortest_type(xn, yn, th):
    seg = np.zeros(5)
    best = np.inf
    best_t = 1
    for t in range(1, 23):
        if type_segments(t, xn, yn, th, seg):
            L = abs_total(seg)
            if L < best:
                best = L
                best_t = t
    return best_t


@njit
def classify(x, y, th, r):
    xn = x / r
    yn = y / r
    if abs(xn) <= NEAR_START and abs(yn) <= NEAR_START and abs(th) <= NEAR_START:
        return _shortest_type(xn, yn, th)
    if (abs(xn - 1.0) <= NEAR_QUARTER and abs(yn - 1.0) <= NEAR_QUARTER
            and abs(th - HALF_PI) <= NEAR_QUARTER):
        return _shortest_type(xn, yn, th)
    q = derive(0.0, 0.0, 0.0, x, y, th, r)
    if in_set_b(q, r):
        return classify_b(x, y, th, q, r)
    return classify_a(x, y, th, q, r)
