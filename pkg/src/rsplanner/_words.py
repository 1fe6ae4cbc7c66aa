"""Classical Reeds-Shepp word formulas in normalized units (turning radius 1).

The goal is given relative to the start pose ``(0, 0, 0)`` as ``(x, y, phi)``.
Each base formula solves one canonical word; the full word set is obtained by
composing the base formulas with the timeflip ``(-x, y, -phi)``, reflect
``(x, -y, -phi)`` and backwards ``(x cos phi + y sin phi, x sin phi - y cos phi,
phi)`` transforms.  That gives 44 formula evaluations covering the 48 classical
words (the CCC formulas leave the sign of their last arc free).

Segment lengths are signed: the sign is the travel direction.  Segment kinds
are encoded as ``NONE=0, LEFT=1, STRAIGHT=2, RIGHT=3``.
"""

import math

import numpy as np

from ._jit import njit

NONE, LEFT, STRAIGHT, RIGHT = 0, 1, 2, 3

PI = math.pi
TWO_PI = 2.0 * math.pi
HALF_PI = 0.5 * math.pi
# Slack on sign constraints; same order as common reference implementations.
ZERO = 1e-10
# Relative roundoff allowed on a formula's domain boundary.
SLACK = 1e-12

_L, _S, _R, _N = LEFT, STRAIGHT, RIGHT, NONE

# One row per formula evaluation, see ``eval_word`` for the matching branch.
WORD_KINDS = np.array(
    [
        # CSC
        [_L, _S, _L, _N, _N], [_L, _S, _L, _N, _N], [_R, _S, _R, _N, _N], [_R, _S, _R, _N, _N],
        [_L, _S, _R, _N, _N], [_L, _S, _R, _N, _N], [_R, _S, _L, _N, _N], [_R, _S, _L, _N, _N],
        # CCC, forwards then backwards
        [_L, _R, _L, _N, _N], [_L, _R, _L, _N, _N], [_R, _L, _R, _N, _N], [_R, _L, _R, _N, _N],
        [_L, _R, _L, _N, _N], [_L, _R, _L, _N, _N], [_R, _L, _R, _N, _N], [_R, _L, _R, _N, _N],
        # CCCC
        [_L, _R, _L, _R, _N], [_L, _R, _L, _R, _N], [_R, _L, _R, _L, _N], [_R, _L, _R, _L, _N],
        [_L, _R, _L, _R, _N], [_L, _R, _L, _R, _N], [_R, _L, _R, _L, _N], [_R, _L, _R, _L, _N],
        # CCSC
        [_L, _R, _S, _L, _N], [_L, _R, _S, _L, _N], [_R, _L, _S, _R, _N], [_R, _L, _S, _R, _N],
        [_L, _R, _S, _R, _N], [_L, _R, _S, _R, _N], [_R, _L, _S, _L, _N], [_R, _L, _S, _L, _N],
        # CSCC (backwards CCSC)
        [_L, _S, _R, _L, _N], [_L, _S, _R, _L, _N], [_R, _S, _L, _R, _N], [_R, _S, _L, _R, _N],
        [_R, _S, _R, _L, _N], [_R, _S, _R, _L, _N], [_L, _S, _L, _R, _N], [_L, _S, _L, _R, _N],
        # CCSCC
        [_L, _R, _S, _L, _R], [_L, _R, _S, _L, _R], [_R, _L, _S, _R, _L], [_R, _L, _S, _R, _L],
    ],
    dtype=np.int64,
)
N_WORDS = WORD_KINDS.shape[0]


@njit
def mod2pi(a):
    """Wrap ``a`` into [-pi, pi]."""
    v = np.fmod(a, TWO_PI)
    if v < -PI:
        v += TWO_PI
    elif v > PI:
        v -= TWO_PI
    return v


@njit
def _one_minus_cos(a):
    # avoids cancellation for tiny headings
    h = math.sin(0.5 * a)
    return 2.0 * h * h


@njit
def _tau_omega(u, v, xi, eta, phi):
    delta = mod2pi(u - v)
    a = math.sin(u) - math.sin(delta)
    b = math.cos(u) - math.cos(delta) - 1.0
    t1 = math.atan2(eta * a - xi * b, xi * a + eta * b)
    t2 = 2.0 * (math.cos(delta) - math.cos(v) - math.cos(u)) + 3.0
    tau = mod2pi(t1 + PI) if t2 < 0.0 else mod2pi(t1)
    omega = mod2pi(tau - u + v - phi)
    return tau, omega


@njit
def lp_sp_lp(x, y, phi, strict=True):
    xi = x - math.sin(phi)
    eta = y - _one_minus_cos(phi)
    u = math.hypot(xi, eta)
    t = math.atan2(eta, xi)
    v = mod2pi(phi - t)
    if not strict or (t >= -ZERO and v >= -ZERO):
        return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_sp_rp(x, y, phi, strict=True):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    u1 = xi * xi + eta * eta
    if u1 >= 4.0 - 4.0 * SLACK:
        t1 = math.atan2(eta, xi)
        u = math.sqrt(max(u1 - 4.0, 0.0))
        theta = math.atan2(2.0, u)
        t = mod2pi(t1 + theta)
        v = mod2pi(t - phi)
        if not strict or (t >= -ZERO and v >= -ZERO):
            return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_rm_l(x, y, phi, strict=True):
    xi = x - math.sin(phi)
    eta = y - _one_minus_cos(phi)
    u1 = math.hypot(xi, eta)
    if u1 <= 4.0 + 4.0 * SLACK:
        # coincident circle centers: every direction works, the shortest has t = 0
        theta = math.atan2(eta, xi) if u1 > 1e-12 else -PI
        u = -2.0 * math.asin(min(0.25 * u1, 1.0))
        t = mod2pi(theta + 0.5 * u + PI)
        v = mod2pi(phi - t + u)
        if not strict or (t >= -ZERO and u <= ZERO):
            return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_rup_lum_rm(x, y, phi, strict=True):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = 0.25 * (2.0 + math.hypot(xi, eta))
    if rho <= 1.0 + SLACK:
        u = math.acos(min(rho, 1.0))
        t, v = _tau_omega(u, -u, xi, eta, phi)
        if not strict or (t >= -ZERO and v <= ZERO):
            return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_rum_lum_rp(x, y, phi, strict=True):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = (20.0 - xi * xi - eta * eta) / 16.0
    if -SLACK <= rho <= 1.0 + SLACK:
        u = -math.acos(min(max(rho, 0.0), 1.0))
        if u >= -HALF_PI:
            t, v = _tau_omega(u, u, xi, eta, phi)
            if not strict or (t >= -ZERO and v >= -ZERO):
                return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_rm_sm_lm(x, y, phi, strict=True):
    xi = x - math.sin(phi)
    eta = y - _one_minus_cos(phi)
    rho = math.hypot(xi, eta)
    if rho >= 2.0 - 2.0 * SLACK:
        theta = math.atan2(eta, xi)
        r = math.sqrt(max(rho * rho - 4.0, 0.0))
        u = 2.0 - r
        t = mod2pi(theta + math.atan2(r, -2.0))
        v = mod2pi(phi - HALF_PI - t)
        if not strict or (t >= -ZERO and u <= ZERO and v <= ZERO):
            return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_rm_sm_rm(x, y, phi, strict=True):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = math.hypot(-eta, xi)
    if rho >= 2.0 - 2.0 * SLACK:
        t = math.atan2(xi, -eta)
        u = 2.0 - rho
        v = mod2pi(t + HALF_PI - phi)
        if not strict or (t >= -ZERO and u <= ZERO and v <= ZERO):
            return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def lp_rm_slm_rp(x, y, phi, strict=True):
    xi = x + math.sin(phi)
    eta = y - 1.0 - math.cos(phi)
    rho = math.hypot(xi, eta)
    if rho >= 2.0 - 2.0 * SLACK:
        u = 4.0 - math.sqrt(max(rho * rho - 4.0, 0.0))
        if not strict or u <= ZERO:
            t = mod2pi(math.atan2((4.0 - u) * xi - 2.0 * eta, -2.0 * xi + (u - 4.0) * eta))
            v = mod2pi(t - phi)
            if not strict or (t >= -ZERO and v >= -ZERO):
                return True, t, u, v
    return False, 0.0, 0.0, 0.0


@njit
def _base(fam, x, y, phi, strict):
    if fam == 0:
        return lp_sp_lp(x, y, phi, strict)
    if fam == 1:
        return lp_sp_rp(x, y, phi, strict)
    if fam == 2:
        return lp_rm_l(x, y, phi, strict)
    if fam == 3:
        return lp_rup_lum_rm(x, y, phi, strict)
    if fam == 4:
        return lp_rum_lum_rp(x, y, phi, strict)
    if fam == 5:
        return lp_rm_sm_lm(x, y, phi, strict)
    if fam == 6:
        return lp_rm_sm_rm(x, y, phi, strict)
    return lp_rm_slm_rp(x, y, phi, strict)


# word index -> (base formula, backwards) ; the low two bits pick timeflip/reflect
_FAMILY = np.array([0, 1, 2, 2, 3, 4, 5, 6, 5, 6, 7], dtype=np.int64)
_BACKWARDS = np.array([0, 0, 0, 1, 0, 0, 0, 0, 1, 1, 0], dtype=np.int64)


@njit
def eval_word(idx, x, y, phi, out, strict=True):
    """Evaluate formula ``idx`` for goal ``(x, y, phi)``.

    Writes the five signed segment lengths (zero-padded) into ``out`` and
    returns whether the formula is feasible.  ``WORD_KINDS[idx]`` gives the
    matching segment kinds.  With ``strict=False`` the travel-direction
    checks are skipped, which yields extra words whose segment signs differ
    from the classical family; callers must verify those by integration.
    """
    group = idx // 4
    flip = idx % 4
    fam = _FAMILY[group]
    if _BACKWARDS[group] == 1:
        c = math.cos(phi)
        s = math.sin(phi)
        bx = x * c + y * s
        by = x * s - y * c
    else:
        bx = x
        by = y
    sign = 1.0
    if flip == 1:
        bx, bphi = -bx, -phi
        sign = -1.0
    elif flip == 2:
        by, bphi = -by, -phi
    elif flip == 3:
        bx, by, bphi = -bx, -by, phi
        sign = -1.0
    else:
        bphi = phi
    ok, t, u, v = _base(fam, bx, by, bphi, strict)
    for i in range(5):
        out[i] = 0.0
    if not ok:
        return False
    if fam <= 2:
        if _BACKWARDS[group] == 1:
            out[0], out[1], out[2] = v, u, t
        else:
            out[0], out[1], out[2] = t, u, v
    elif fam == 3:
        out[0], out[1], out[2], out[3] = t, u, -u, v
    elif fam == 4:
        out[0], out[1], out[2], out[3] = t, u, u, v
    elif fam <= 6:
        if _BACKWARDS[group] == 1:
            out[0], out[1], out[2], out[3] = v, u, -HALF_PI, t
        else:
            out[0], out[1], out[2], out[3] = t, -HALF_PI, u, v
    else:
        out[0], out[1], out[2], out[3], out[4] = t, -HALF_PI, u, -HALF_PI, v
    if sign < 0.0:
        for i in range(5):
            out[i] = -out[i]
    return True


@njit
def abs_total(seg):
    s = 0.0
    for i in range(5):
        s += abs(seg[i])
    return s


@njit
def shortest_word(x, y, phi, best):
    """Exhaustive search over every formula; returns ``(index, length)``.

    ``best`` receives the winning signed lengths.  Index is -1 only if no
    formula is feasible, which does not happen for finite input.
    """
    seg = np.empty(5)
    best_idx = -1
    best_len = np.inf
    for idx in range(N_WORDS):
        if eval_word(idx, x, y, phi, seg):
            total = abs_total(seg)
            if total < best_len:
                best_len = total
                best_idx = idx
                for i in range(5):
                    best[i] = seg[i]
    return best_idx, best_len


@njit
def all_words(x, y, phi, table, feasible, strict=True):
    """Evaluate every formula into ``table`` (N_WORDS x 5) and ``feasible``."""
    for idx in range(N_WORDS):
        feasible[idx] = eval_word(idx, x, y, phi, table[idx], strict)
