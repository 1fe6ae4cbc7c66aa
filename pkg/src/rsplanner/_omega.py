"""Compiled kernels for the free-final-heading problem.

Everything works in a canonical frame: start at the origin heading +y
(``pi/2``), right turning circle centered at ``(r, 0)``, left one at
``(-r, 0)``. Goals are mirrored into the first quadrant with ``abs`` and the
resulting heading is mirrored back with ``h -> pi - h`` per flipped axis.
"""

import cmath
import math

import numpy as np

from ._jit import njit
from ._pipeline import accel_local, exhaustive_local, total_length, wrap
from ._words import HALF_PI, PI, TWO_PI

R1, R2, R3 = 1, 2, 3
RESIDUAL_TOL = 1e-6
# Grid used by the bisection fallback to bracket roots.
SCAN_STEPS = 1440
_I = 1j
_E_HALF = cmath.exp(0.5j * HALF_PI)
_E_ONE = cmath.exp(1j * HALF_PI)
_E_THREE_HALF = cmath.exp(1.5j * HALF_PI)
_E_TWO = cmath.exp(2j * HALF_PI)


@njit
def to_canonical(x0, y0, th0, gx, gy):
    """Goal position in the canonical frame of start ``(x0, y0, th0)``."""
    c = math.cos(th0)
    s = math.sin(th0)
    dx = gx - x0
    dy = gy - y0
    fwd = c * dx + s * dy
    left = -s * dx + c * dy
    return -left, fwd


@njit
def canon_length(X, Y, h, r, accelerated):
    """Shortest RS length from the canonical start to ``(X, Y, h)``."""
    kinds = np.zeros(5, dtype=np.int64)
    seg = np.zeros(5)
    ph = wrap(h - HALF_PI)
    if accelerated:
        t = accel_local(Y, -X, ph, r, kinds, seg)
        if t < 0:
            return np.inf
    else:
        exhaustive_local(Y, -X, ph, r, kinds, seg)
    return total_length(seg, r)


@njit
def region_q1(dx, dy, r):
    """Region of a first-quadrant canonical goal; first match wins."""
    in_r = (dx - r) * (dx - r) + dy * dy <= r * r
    in_l = (dx + r) * (dx + r) + dy * dy <= 5.0 * r * r
    if not in_r and (dy >= r or dx - r < 0.0):
        return R1
    if not in_l and (dy < r or dx - r > 0.0):
        return R2
    return R3


# --- closed forms ---------------------------------------------------------

@njit
def _omega1(dx, dy, r, sg):
    num = -r * _E_HALF + sg * _I * cmath.sqrt(
        -_I * r * (dx + _I * dy) + _E_ONE * (dx * dx + dy * dy)
        + _I * r * _E_TWO * (dx - _I * dy))
    den = _I * r * _E_THREE_HALF + _E_HALF * (dx + _I * dy)
    return (-_I * cmath.log(num / den)).real


@njit
def _omega2(dx, dy, r, sg):
    num = sg * _E_HALF * cmath.sqrt(
        _I * r * (dx - dy) + _E_ONE * (dx * dx + dy * dy)
        - _I * r * _E_TWO * (dx + dy)) - r * _I * _E_ONE
    den = r - _E_ONE * (_I * dx + dy)
    return (-_I * cmath.log(num / den)).real


@njit
def _omega3(dx, dy, r, sg):
    q = dx * dx + dy * dy
    a = -0.25 * r * (dx + _I * dy)
    b = 2.0 * r * r - 2.0 * r * _E_ONE * (_I * dx + dy)
    c = 2.0 * r * r * _E_TWO + 2.0 * r * _E_ONE * (_I * dx - dy)
    d = (-r * (dx + _I * dy) + 4.0 * _I * r * r * _E_ONE + _I * _E_ONE * q
         + r * _E_TWO * (dx - _I * dy))
    e = _I * r * r * _E_ONE + 0.25 * _I * _E_ONE * q + 0.25 * r * _E_TWO * (dx - _I * dy)
    f = r * r * _E_TWO + r * _E_ONE * (_I * dx - dy)
    return (-_I * cmath.log((a + sg * 0.25 * cmath.sqrt(4.0 * b * c + d * d) + e) / f)).real


# --- defining equations ---------------------------------------------------

@njit
def tangent_residual(dx, dy, r, cx, h):
    """Signed miss of the line through the goal with heading ``h`` against
    the clockwise tangent of the circle centered at ``(cx, 0)``; also
    returns whether the tangent point lies behind the goal."""
    ux = math.cos(h)
    uy = math.sin(h)
    cross = ux * (0.0 - dy) - uy * (cx - dx)
    ahead = (dx - cx) * ux + dy * uy >= 0.0
    return (cross + r) / r, ahead


@njit
def reach_residual(dx, dy, r, T):
    """Signed miss of ``|G - c| = r`` for the second right circle at
    ``c = (-r + 2r cos T, -2r sin T)``; returns the residual and heading."""
    fx = -r + 2.0 * r * math.cos(T)
    fy = -2.0 * r * math.sin(T)
    d = math.hypot(dx - fx, dy - fy)
    return (d - r) / r, math.atan2(dy - fy, dx - fx) - HALF_PI


@njit
def _tangent_eval(dx, dy, r, reg, h):
    cx = r if reg == R1 else -r
    res, ahead = tangent_residual(dx, dy, r, cx, h)
    return res, ahead


@njit
def _pick_r12(dx, dy, r, reg, hs, n):
    best_h = 0.0
    best_res = np.inf
    for i in range(n):
        h = hs[i]
        if not math.isfinite(h):
            continue
        res, ahead = _tangent_eval(dx, dy, r, reg, h)
        if ahead and abs(res) <= RESIDUAL_TOL and abs(res) < best_res:
            best_res = abs(res)
            best_h = h
    return best_h, best_res < np.inf


@njit
def _pick_r3(dx, dy, r, ts, n):
    best_h = 0.0
    best_len = np.inf
    for i in range(n):
        T = ts[i]
        if not math.isfinite(T):
            continue
        res, h = reach_residual(dx, dy, r, T)
        if abs(res) > RESIDUAL_TOL:
            continue
        L = canon_length(dx, dy, h, r, True)
        if L < best_len:
            best_len = L
            best_h = h
    return best_h, best_len < np.inf


@njit
def _scan_roots(dx, dy, r, reg, out):
    """Bracket and bisect roots of the region's defining equation.

    Near-tangential double roots show no sign change, so the smallest
    ``|f|`` sample is refined by golden-section search as well.
    """
    n_out = 0
    step = TWO_PI / SCAN_STEPS
    prev_v = 0.0
    best_i = 0
    best_a = np.inf
    for k in range(SCAN_STEPS + 1):
        a = -PI + k * step
        v = _defining(dx, dy, r, reg, a)
        if abs(v) < best_a:
            best_a = abs(v)
            best_i = k
        if k > 0 and (prev_v < 0.0) != (v < 0.0) and n_out < out.size - 1:
            lo = a - step
            hi = a
            flo = prev_v
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if mid <= lo or mid >= hi:
                    break
                fm = _defining(dx, dy, r, reg, mid)
                if (fm < 0.0) == (flo < 0.0):
                    lo = mid
                    flo = fm
                else:
                    hi = mid
            out[n_out] = 0.5 * (lo + hi)
            n_out += 1
        prev_v = v
    # golden-section on |f| around the best sample
    lo = -PI + (best_i - 1) * step
    hi = -PI + (best_i + 1) * step
    g = 0.5 * (math.sqrt(5.0) - 1.0)
    for _ in range(200):
        m1 = hi - g * (hi - lo)
        m2 = lo + g * (hi - lo)
        if abs(_defining(dx, dy, r, reg, m1)) < abs(_defining(dx, dy, r, reg, m2)):
            hi = m2
        else:
            lo = m1
        if hi - lo < 1e-15:
            break
    out[n_out] = 0.5 * (lo + hi)
    n_out += 1
    return n_out


@njit
def _defining(dx, dy, r, reg, a):
    if reg == R3:
        res, _ = reach_residual(dx, dy, r, a)
        return res
    res, _ = _tangent_eval(dx, dy, r, reg, a)
    return res


@njit
def heading_q1(dx, dy, r, reg, allow_closed_form):
    """Optimal canonical heading for a first-quadrant goal.

    Returns ``(heading, used_fallback, ok)``.
    """
    cand = np.empty(2)
    if allow_closed_form:
        for j in range(2):
            sg = 1.0 if j == 0 else -1.0
            if reg == R1:
                cand[j] = wrap(HALF_PI - _omega1(dx, dy, r, sg))
            elif reg == R2:
                cand[j] = wrap(_omega2(dx, dy, r, sg) - HALF_PI)
            else:
                cand[j] = _omega3(dx, dy, r, sg)
        if reg == R3:
            h, ok = _pick_r3(dx, dy, r, cand, 2)
        else:
            h, ok = _pick_r12(dx, dy, r, reg, cand, 2)
        if ok:
            return wrap(h), False, True
    roots = np.empty(16)
    n = _scan_roots(dx, dy, r, reg, roots)
    if reg == R3:
        h, ok = _pick_r3(dx, dy, r, roots, n)
    else:
        h, ok = _pick_r12(dx, dy, r, reg, roots, n)
    return wrap(h), True, ok


@njit
def unmirror(h, X, Y):
    if X < 0.0:
        h = PI - h
    if Y < 0.0:
        h = PI - h
    return wrap(h)


@njit
def solve_canonical(X, Y, r, allow_closed_form):
    """Region, canonical heading, fallback flag and success for ``(X, Y)``."""
    dx = abs(X)
    dy = abs(Y)
    reg = region_q1(dx, dy, r)
    if dx == 0.0 and dy == 0.0:
        return reg, HALF_PI, False, True
    h, fb, ok = heading_q1(dx, dy, r, reg, allow_closed_form)
    return reg, unmirror(h, X, Y), fb, ok


@njit
def sweep_canonical(X, Y, r, step, accelerated):
    """Brute-force heading search; returns ``(heading, length)``."""
    n = int(round(TWO_PI / step))
    best_len = np.inf
    best_h = 0.0
    for k in range(n):
        h = -PI + k * step
        L = canon_length(X, Y, h, r, accelerated)
        if L < best_len:
            best_len = L
            best_h = h
    return best_h, best_len


@njit
def grid_kernel(x0, y0, th0, gx0, gy0, cell, width, height, r, omega, length, fallback):
    """Fill row-major ``(height, width)`` arrays of Omega and length."""
    for iy in range(height):
        for ix in range(width):
            gx = gx0 + ix * cell
            gy = gy0 + iy * cell
            X, Y = to_canonical(x0, y0, th0, gx, gy)
            _, h, fb, ok = solve_canonical(X, Y, r, True)
            omega[iy, ix] = wrap(th0 + h - HALF_PI)
            fallback[iy, ix] = fb or not ok
            if X == 0.0 and Y == 0.0:
                length[iy, ix] = 0.0
            else:
                length[iy, ix] = canon_length(X, Y, h, r, True)


@njit
def batch_solve(x0, y0, th0, gx, gy, r, omega, length, region, fallback):
    for i in range(gx.size):
        X, Y = to_canonical(x0[i], y0[i], th0[i], gx[i], gy[i])
        reg, h, fb, ok = solve_canonical(X, Y, r[i], True)
        region[i] = reg
        omega[i] = wrap(th0[i] + h - HALF_PI)
        fallback[i] = fb or not ok
        length[i] = 0.0 if (X == 0.0 and Y == 0.0) else canon_length(X, Y, h, r[i], True)


@njit
def batch_sweep(x0, y0, th0, gx, gy, r, step, accelerated, omega, length):
    for i in range(gx.size):
        X, Y = to_canonical(x0[i], y0[i], th0[i], gx[i], gy[i])
        h, L = sweep_canonical(X, Y, r[i], step, accelerated)
        omega[i] = wrap(th0[i] + h - HALF_PI)
        length[i] = L
