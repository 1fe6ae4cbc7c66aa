"""Compiled end-to-end kernels: frame change, quadrant folding, both solvers,
closed-form integration and the batch loops used by the harness.

Signed normalized segment lengths travel together with a kinds row
(``LEFT``/``STRAIGHT``/``RIGHT``/``NONE``); lengths are multiplied by the
radius only at the edges.
"""

import math

import numpy as np

from ._accel import TYPE_WORDS, classify, type_segments
from ._jit import njit
from ._words import LEFT, NONE, PI, RIGHT, TWO_PI, WORD_KINDS, shortest_word

N_TYPES = TYPE_WORDS.shape[0] - 1


@njit
def wrap(a):
    """Wrap into [-pi, pi)."""
    if -PI <= a < PI:
        return a
    v = np.fmod(a + PI, TWO_PI)
    if v < 0.0:
        v += TWO_PI
    v -= PI
    if v >= PI:
        v -= TWO_PI
    return v


@njit
def to_local(x0, y0, th0, x1, y1, th1):
    c = math.cos(th0)
    s = math.sin(th0)
    dx = x1 - x0
    dy = y1 - y0
    return c * dx + s * dy, -s * dx + c * dy, wrap(th1 - th0)


@njit
def fold_q1(x, y, th):
    """Mirror a local goal into the first quadrant; returns (x, y, th, q)."""
    if x > 0.0 and y > 0.0:
        return x, y, th, 1
    if x <= 0.0 and y >= 0.0:
        return -x, y, wrap(-th), 2
    if x <= 0.0 and y <= 0.0:
        return -x, -y, th, 3
    return x, -y, wrap(-th), 4


@njit
def unfold(q, kinds, seg):
    """Map a first-quadrant word back to quadrant ``q`` in place."""
    if q == 1:
        return
    for i in range(5):
        if q == 2 or q == 3:
            seg[i] = -seg[i]
        if q == 3 or q == 4:
            if kinds[i] == LEFT:
                kinds[i] = RIGHT
            elif kinds[i] == RIGHT:
                kinds[i] = LEFT


@njit
def accel_local(x, y, th, r, kinds, seg):
    """Accelerated solve for a goal in the start's local frame.

    Returns the dispatched type id, or its negation when the type's formula
    turns out infeasible (a partition inconsistency).
    """
    xm, ym, thm, q = fold_q1(x, y, th)
    ptype = classify(xm, ym, thm, r)
    ok = type_segments(ptype, xm / r, ym / r, thm, seg)
    word = TYPE_WORDS[ptype, 0]
    for i in range(5):
        kinds[i] = WORD_KINDS[word, i]
    if not ok:
        for i in range(5):
            seg[i] = 0.0
        return -ptype
    unfold(q, kinds, seg)
    return ptype


@njit
def exhaustive_local(x, y, th, r, kinds, seg):
    """Exhaustive solve in the local frame; returns the winning formula index."""
    idx, _ = shortest_word(x / r, y / r, th, seg)
    for i in range(5):
        kinds[i] = WORD_KINDS[idx, i]
    return idx


@njit
def total_length(seg, r):
    s = 0.0
    for i in range(5):
        s += abs(seg[i])
    return s * r


@njit
def integrate_signed(x, y, th, kinds, seg, r):
    """Closed-form endpoint of a signed normalized word from ``(x, y, th)``."""
    for i in range(5):
        k = kinds[i]
        a = seg[i]
        if k == NONE or a == 0.0:
            continue
        if k == LEFT:
            cx = x - r * math.sin(th)
            cy = y + r * math.cos(th)
            th = th + a
            x = cx + r * math.sin(th)
            y = cy - r * math.cos(th)
        elif k == RIGHT:
            cx = x + r * math.sin(th)
            cy = y - r * math.cos(th)
            th = th - a
            x = cx - r * math.sin(th)
            y = cy + r * math.cos(th)
        else:
            x += a * r * math.cos(th)
            y += a * r * math.sin(th)
    return x, y, wrap(th)


@njit
def solve_global(x0, y0, th0, x1, y1, th1, r, kinds, seg, accelerated):
    xl, yl, tl = to_local(x0, y0, th0, x1, y1, th1)
    if accelerated:
        return accel_local(xl, yl, tl, r, kinds, seg)
    return exhaustive_local(xl, yl, tl, r, kinds, seg)


@njit
def batch_lengths(x0, y0, th0, x1, y1, th1, r, accelerated, lengths, tags):
    """Solve every query; ``tags`` receives type ids (or formula indices)."""
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    for i in range(x0.size):
        t = solve_global(x0[i], y0[i], th0[i], x1[i], y1[i], th1[i], r[i],
                         kinds, seg, accelerated)
        tags[i] = t
        lengths[i] = total_length(seg, r[i])


@njit
def batch_timed(x0, y0, th0, x1, y1, th1, r, accelerated):
    """Tight loop for timing; returns a checksum so nothing is optimized out."""
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    acc = 0.0
    for i in range(x0.size):
        solve_global(x0[i], y0[i], th0[i], x1[i], y1[i], th1[i], r[i],
                     kinds, seg, accelerated)
        acc += seg[0]
    return acc


@njit
def batch_validate(x0, y0, th0, x1, y1, th1, r, lengths, len_err, pos_err, head_err, tags):
    """Accelerated solve, oracle comparison and endpoint check per query."""
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    okinds = np.zeros(5, dtype=np.int64)
    oseg = np.zeros(5)
    for i in range(x0.size):
        t = solve_global(x0[i], y0[i], th0[i], x1[i], y1[i], th1[i], r[i],
                         kinds, seg, True)
        tags[i] = t
        solve_global(x0[i], y0[i], th0[i], x1[i], y1[i], th1[i], r[i],
                     okinds, oseg, False)
        lengths[i] = total_length(seg, r[i])
        len_err[i] = abs(lengths[i] - total_length(oseg, r[i]))
        ex, ey, et = integrate_signed(x0[i], y0[i], th0[i], kinds, seg, r[i])
        pos_err[i] = math.hypot(ex - x1[i], ey - y1[i])
        head_err[i] = abs(wrap(et - th1[i]))


@njit
def batch_classify(x0, y0, th0, x1, y1, th1, r, tags):
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    for i in range(x0.size):
        tags[i] = solve_global(x0[i], y0[i], th0[i], x1[i], y1[i], th1[i], r[i],
                               kinds, seg, True)
