"""Pure-Python kernels: segment distance, rotating-segment CCD, pairwise simplicity.

Mirrors ``_ccd.pyx`` statement for statement; the two must return identical
results up to floating-point evaluation order.
"""
from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi
BACKEND = "python"


def _clamp01(x):
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


def segment_distance(p0, p1, q0, q1):
    """Closest distance between closed segments p0p1 and q0q1 -> (dist, s, t)."""
    d1x = p1[0] - p0[0]
    d1y = p1[1] - p0[1]
    d1z = p1[2] - p0[2]
    d2x = q1[0] - q0[0]
    d2y = q1[1] - q0[1]
    d2z = q1[2] - q0[2]
    rx = p0[0] - q0[0]
    ry = p0[1] - q0[1]
    rz = p0[2] - q0[2]
    a = d1x * d1x + d1y * d1y + d1z * d1z
    e = d2x * d2x + d2y * d2y + d2z * d2z
    f = d2x * rx + d2y * ry + d2z * rz
    if a <= 1e-300 and e <= 1e-300:
        s = 0.0
        t = 0.0
    elif a <= 1e-300:
        s = 0.0
        t = _clamp01(f / e)
    else:
        c = d1x * rx + d1y * ry + d1z * rz
        if e <= 1e-300:
            t = 0.0
            s = _clamp01(-c / a)
        else:
            b = d1x * d2x + d1y * d2y + d1z * d2z
            denom = a * e - b * b
            # near-parallel: any s works, the clamps below fix t and s
            if denom > 1e-14 * a * e:
                s = _clamp01((b * f - c * e) / denom)
            else:
                s = 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t = 0.0
                s = _clamp01(-c / a)
            elif t > 1.0:
                t = 1.0
                s = _clamp01((b - c) / a)
    dx = rx + d1x * s - d2x * t
    dy = ry + d1y * s - d2y * t
    dz = rz + d1z * s - d2z * t
    return math.sqrt(dx * dx + dy * dy + dz * dz), s, t


def _local(frame, p):
    """(height, x, y) of point p in the axis frame."""
    wx = p[0] - frame[0]
    wy = p[1] - frame[1]
    wz = p[2] - frame[2]
    h = wx * frame[3] + wy * frame[4] + wz * frame[5]
    x = wx * frame[6] + wy * frame[7] + wz * frame[8]
    y = wx * frame[9] + wy * frame[10] + wz * frame[11]
    return h, x, y


def _quad_candidates(a, b, c, lo, hi, tol, out):
    """Append to ``out`` parameters in [lo, hi] where a v^2 + b v + c vanishes or is closest to 0.

    Near-tangent systems contribute the vertex; an identically-zero quadratic
    contributes the interval ends.
    """
    if lo > hi:
        return
    scale = abs(a) + abs(b) + abs(c)
    if scale <= tol:
        out.append(lo)
        out.append(hi)
        return
    if abs(a) <= 1e-12 * scale:
        if abs(b) <= 1e-12 * scale:
            out.append(lo)
            out.append(hi)
            return
        v = -c / b
        if lo - 1e-9 <= v <= hi + 1e-9:
            out.append(min(max(v, lo), hi))
        return
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        v = -b / (2.0 * a)
        if lo <= v <= hi:
            out.append(v)
        else:
            out.append(lo)
            out.append(hi)
        return
    sq = math.sqrt(disc)
    q = -0.5 * (b + sq) if b >= 0.0 else -0.5 * (b - sq)
    r1 = q / a
    r2 = c / q if q != 0.0 else r1
    for v in (r1, r2):
        if lo - 1e-9 <= v <= hi + 1e-9:
            out.append(min(max(v, lo), hi))


def sweep_pair(frame, phi_abs, sgn, p0, p1, q0, q1, eps):
    """Earliest contact of segment p0p1 rotating about the axis with static q0q1.

    ``frame`` = (origin, direction, e1, e2) flattened to 12 floats. Returns
    ``None`` or ``(dtheta, u, v)`` where dtheta is the swept angle at contact.
    """
    hm0, xm0, ym0 = _local(frame, p0)
    hm_1, xm_1, ym_1 = _local(frame, p1)
    hs0, xs0, ys0 = _local(frame, q0)
    hs_1, xs_1, ys_1 = _local(frame, q1)
    hm1 = hm_1 - hm0
    xm1 = xm_1 - xm0
    ym1 = ym_1 - ym0
    hs1 = hs_1 - hs0
    xs1 = xs_1 - xs0
    ys1 = ys_1 - ys0

    # height-range reject
    if min(hm0, hm_1) > max(hs0, hs_1) + eps or min(hs0, hs_1) > max(hm0, hm_1) + eps:
        return None
    # radius-range reject
    rm_hi = max(math.hypot(xm0, ym0), math.hypot(xm_1, ym_1))
    rs_hi = max(math.hypot(xs0, ys0), math.hypot(xs_1, ys_1))
    am = xm1 * xm1 + ym1 * ym1
    ams = xs1 * xs1 + ys1 * ys1
    if am > 0.0:
        tu = _clamp01(-(xm0 * xm1 + ym0 * ym1) / am)
        rm_lo = math.hypot(xm0 + xm1 * tu, ym0 + ym1 * tu)
    else:
        rm_lo = math.hypot(xm0, ym0)
    if ams > 0.0:
        tv = _clamp01(-(xs0 * xs1 + ys0 * ys1) / ams)
        rs_lo = math.hypot(xs0 + xs1 * tv, ys0 + ys1 * tv)
    else:
        rs_lo = math.hypot(xs0, ys0)
    if rm_lo > rs_hi + eps or rs_lo > rm_hi + eps:
        return None

    # already touching before any motion
    d0, s0, t0 = segment_distance(p0, p1, q0, q1)
    if d0 <= eps:
        return 0.0, s0, t0

    us = []
    vs = []
    # (a) moving endpoints against the static segment
    for u in (0.0, 1.0):
        hp = hm0 + hm1 * u
        if abs(hs1) > eps:
            v = (hp - hs0) / hs1
            tolv = eps / abs(hs1)
            if -tolv <= v <= 1.0 + tolv:
                us.append(u)
                vs.append(_clamp01(v))
        elif abs(hp - hs0) <= eps:
            xp = xm0 + xm1 * u
            yp = ym0 + ym1 * u
            rp2 = xp * xp + yp * yp
            cand = []
            _quad_candidates(ams, 2.0 * (xs0 * xs1 + ys0 * ys1),
                             xs0 * xs0 + ys0 * ys0 - rp2, 0.0, 1.0, eps * eps, cand)
            for v in cand:
                us.append(u)
                vs.append(v)
    # (b) static endpoints against the moving segment
    for v in (0.0, 1.0):
        hq = hs0 + hs1 * v
        if abs(hm1) > eps:
            u = (hq - hm0) / hm1
            tolu = eps / abs(hm1)
            if -tolu <= u <= 1.0 + tolu:
                us.append(_clamp01(u))
                vs.append(v)
        elif abs(hq - hm0) <= eps:
            xq = xs0 + xs1 * v
            yq = ys0 + ys1 * v
            rq2 = xq * xq + yq * yq
            cand = []
            _quad_candidates(am, 2.0 * (xm0 * xm1 + ym0 * ym1),
                             xm0 * xm0 + ym0 * ym0 - rq2, 0.0, 1.0, eps * eps, cand)
            for u in cand:
                us.append(u)
                vs.append(v)
    # (c) interior contacts: eliminate one parameter through the height equation
    rscale = eps * (rm_hi + rs_hi + eps)
    if abs(hm1) > eps:
        alpha = (hs0 - hm0) / hm1
        beta = hs1 / hm1
        # v range keeping u = alpha + beta v inside [0, 1]
        lo = 0.0
        hi = 1.0
        if beta > 0.0:
            lo = max(lo, -alpha / beta)
            hi = min(hi, (1.0 - alpha) / beta)
        elif beta < 0.0:
            lo = max(lo, (1.0 - alpha) / beta)
            hi = min(hi, -alpha / beta)
        elif not (-1e-12 <= alpha <= 1.0 + 1e-12):
            hi = -1.0
        if lo <= hi:
            X0 = xm0 + xm1 * alpha
            X1 = xm1 * beta
            Y0 = ym0 + ym1 * alpha
            Y1 = ym1 * beta
            c2 = X1 * X1 + Y1 * Y1 - ams
            c1 = 2.0 * (X0 * X1 + Y0 * Y1 - xs0 * xs1 - ys0 * ys1)
            c0 = X0 * X0 + Y0 * Y0 - xs0 * xs0 - ys0 * ys0
            cand = []
            _quad_candidates(c2, c1, c0, lo, hi, rscale, cand)
            for v in cand:
                us.append(_clamp01(alpha + beta * v))
                vs.append(v)
    elif abs(hs1) > eps:
        alpha = (hm0 - hs0) / hs1
        beta = hm1 / hs1
        lo = 0.0
        hi = 1.0
        if beta > 0.0:
            lo = max(lo, -alpha / beta)
            hi = min(hi, (1.0 - alpha) / beta)
        elif beta < 0.0:
            lo = max(lo, (1.0 - alpha) / beta)
            hi = min(hi, -alpha / beta)
        elif not (-1e-12 <= alpha <= 1.0 + 1e-12):
            hi = -1.0
        if lo <= hi:
            X0 = xs0 + xs1 * alpha
            X1 = xs1 * beta
            Y0 = ys0 + ys1 * alpha
            Y1 = ys1 * beta
            c2 = X1 * X1 + Y1 * Y1 - am
            c1 = 2.0 * (X0 * X1 + Y0 * Y1 - xm0 * xm1 - ym0 * ym1)
            c0 = X0 * X0 + Y0 * Y0 - xm0 * xm0 - ym0 * ym0
            cand = []
            _quad_candidates(c2, c1, c0, lo, hi, rscale, cand)
            for u in cand:
                us.append(u)
                vs.append(_clamp01(alpha + beta * u))

    best = -1.0
    bu = 0.0
    bv = 0.0
    full = phi_abs >= TWO_PI
    for k in range(len(us)):
        u = us[k]
        v = vs[k]
        hm = hm0 + hm1 * u
        hs = hs0 + hs1 * v
        if abs(hm - hs) > eps:
            continue
        xm = xm0 + xm1 * u
        ym = ym0 + ym1 * u
        xs = xs0 + xs1 * v
        ys = ys0 + ys1 * v
        rm = math.hypot(xm, ym)
        rs = math.hypot(xs, ys)
        # on-axis points never move; the initial-distance test covers them
        if rm <= eps or abs(rm - rs) > eps:
            continue
        dth = sgn * (math.atan2(ys, xs) - math.atan2(ym, xm))
        dth = math.fmod(dth, TWO_PI)
        if dth < 0.0:
            dth += TWO_PI
        if dth >= TWO_PI:
            dth = 0.0
        if full or dth <= phi_abs + eps / rm:
            if best < 0.0 or dth < best:
                best = dth
                bu = u
                bv = v
    if best < 0.0:
        return None
    return best, bu, bv


def sweep_range(verts, frame, phi_abs, sgn, m_lo, m_hi, s_lo, s_hi, eps, skip_keys):
    """Run ``sweep_pair`` over moving segments [m_lo, m_hi) x static [s_lo, s_hi).

    ``verts`` is an ``(N, 3)`` float array; ``skip_keys`` a sorted int64 array of
    exempt pairs encoded ``i * nseg + j`` with i < j. Returns
    ``(found, dtheta, mi, si, u, v, tests)``; ties keep the lexicographically
    smallest (moving, static) pair.
    """
    nseg = len(verts) - 1
    skip = set(skip_keys.tolist())
    verts = [tuple(p) for p in verts.tolist()]
    found = False
    best = 0.0
    bmi = bsi = -1
    bu = bv = 0.0
    tests = 0
    for mi in range(m_lo, m_hi):
        p0 = verts[mi]
        p1 = verts[mi + 1]
        for si in range(s_lo, s_hi):
            if skip and (si * nseg + mi if si < mi else mi * nseg + si) in skip:
                continue
            tests += 1
            r = sweep_pair(frame, phi_abs, sgn, p0, p1, verts[si], verts[si + 1], eps)
            if r is not None and (not found or r[0] < best):
                found = True
                best, bu, bv = r
                bmi = mi
                bsi = si
    return found, best, bmi, bsi, bu, bv, tests


def first_violation(verts, eps, skip_keys):
    """Lexicographically first segment pair violating simplicity, or (-1, -1)."""
    nseg = len(verts) - 1
    skip = set(skip_keys.tolist())
    verts = [tuple(p) for p in verts.tolist()]
    for i in range(nseg):
        a0 = verts[i]
        a1 = verts[i + 1]
        for j in range(i + 1, nseg):
            if skip and i * nseg + j in skip:
                continue
            b0 = verts[j]
            b1 = verts[j + 1]
            if j == i + 1:
                # shared vertex is fine; folding back onto each other is not
                if segment_distance(b1, b1, a0, a1)[0] <= eps or segment_distance(a0, a0, b0, b1)[0] <= eps:
                    return i, j
            elif segment_distance(a0, a1, b0, b1)[0] <= eps:
                return i, j
    return -1, -1
