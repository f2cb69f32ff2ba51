# cython: language_level=3
"""Compiled kernels; same contracts as ``_ccd_py``."""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, atan2, fmod, hypot, M_PI

cnp.import_array()

BACKEND = "cython"

cdef double TWO_PI = 2.0 * M_PI
DEF MAXC = 16


cdef inline double _clamp01(double x) noexcept nogil:
    if x < 0.0:
        return 0.0
    if x > 1.0:
        return 1.0
    return x


cdef double _segdist(const double* p0, const double* p1, const double* q0, const double* q1,
                     double* s_out, double* t_out) noexcept nogil:
    cdef double d1x = p1[0] - p0[0], d1y = p1[1] - p0[1], d1z = p1[2] - p0[2]
    cdef double d2x = q1[0] - q0[0], d2y = q1[1] - q0[1], d2z = q1[2] - q0[2]
    cdef double rx = p0[0] - q0[0], ry = p0[1] - q0[1], rz = p0[2] - q0[2]
    cdef double a = d1x * d1x + d1y * d1y + d1z * d1z
    cdef double e = d2x * d2x + d2y * d2y + d2z * d2z
    cdef double f = d2x * rx + d2y * ry + d2z * rz
    cdef double s, t, b, c, denom, dx, dy, dz
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
    s_out[0] = s
    t_out[0] = t
    return sqrt(dx * dx + dy * dy + dz * dz)


def segment_distance(p0, p1, q0, q1):
    cdef double a[3]
    cdef double b[3]
    cdef double c[3]
    cdef double d[3]
    cdef double s, t, dist
    cdef int k
    for k in range(3):
        a[k] = p0[k]
        b[k] = p1[k]
        c[k] = q0[k]
        d[k] = q1[k]
    dist = _segdist(a, b, c, d, &s, &t)
    return dist, s, t


cdef inline void _local(const double* fr, const double* p, double* h, double* x, double* y) noexcept nogil:
    cdef double wx = p[0] - fr[0], wy = p[1] - fr[1], wz = p[2] - fr[2]
    h[0] = wx * fr[3] + wy * fr[4] + wz * fr[5]
    x[0] = wx * fr[6] + wy * fr[7] + wz * fr[8]
    y[0] = wx * fr[9] + wy * fr[10] + wz * fr[11]


cdef int _quad(double a, double b, double c, double lo, double hi, double tol,
               double* out, int n) noexcept nogil:
    cdef double scale, v, disc, sq, q, r1, r2
    if lo > hi:
        return n
    scale = fabs(a) + fabs(b) + fabs(c)
    if scale <= tol:
        out[n] = lo
        out[n + 1] = hi
        return n + 2
    if fabs(a) <= 1e-12 * scale:
        if fabs(b) <= 1e-12 * scale:
            out[n] = lo
            out[n + 1] = hi
            return n + 2
        v = -c / b
        if lo - 1e-9 <= v <= hi + 1e-9:
            out[n] = min(max(v, lo), hi)
            n += 1
        return n
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        v = -b / (2.0 * a)
        if lo <= v <= hi:
            out[n] = v
            return n + 1
        out[n] = lo
        out[n + 1] = hi
        return n + 2
    sq = sqrt(disc)
    if b >= 0.0:
        q = -0.5 * (b + sq)
    else:
        q = -0.5 * (b - sq)
    r1 = q / a
    r2 = c / q if q != 0.0 else r1
    if lo - 1e-9 <= r1 <= hi + 1e-9:
        out[n] = min(max(r1, lo), hi)
        n += 1
    if lo - 1e-9 <= r2 <= hi + 1e-9:
        out[n] = min(max(r2, lo), hi)
        n += 1
    return n


cdef int _sweep_pair(const double* fr, double phi_abs, double sgn,
                     const double* p0, const double* p1, const double* q0, const double* q1,
                     double eps, double* res) noexcept nogil:
    """Returns 1 and fills res = (dtheta, u, v) on contact, else 0."""
    cdef double hm0, xm0, ym0, hm_1, xm_1, ym_1, hs0, xs0, ys0, hs_1, xs_1, ys_1
    cdef double hm1, xm1, ym1, hs1, xs1, ys1
    cdef double rm_hi, rs_hi, rm_lo, rs_lo, am, ams, tu, tv
    cdef double d0, s0, t0
    cdef double us[MAXC]
    cdef double vs[MAXC]
    cdef double cand[4]
    cdef int nc = 0, k, j, ncand
    cdef double u, v, hp, hq, tolv, tolu, xp, yp, rp2, xq, yq, rq2
    cdef double rscale, alpha, beta, lo, hi, X0, X1, Y0, Y1, c2, c1, c0
    cdef double hm, hs, xm, ym, xs, ys, rm, rs, dth, best, bu, bv
    cdef bint full

    _local(fr, p0, &hm0, &xm0, &ym0)
    _local(fr, p1, &hm_1, &xm_1, &ym_1)
    _local(fr, q0, &hs0, &xs0, &ys0)
    _local(fr, q1, &hs_1, &xs_1, &ys_1)
    hm1 = hm_1 - hm0
    xm1 = xm_1 - xm0
    ym1 = ym_1 - ym0
    hs1 = hs_1 - hs0
    xs1 = xs_1 - xs0
    ys1 = ys_1 - ys0

    if min(hm0, hm_1) > max(hs0, hs_1) + eps or min(hs0, hs_1) > max(hm0, hm_1) + eps:
        return 0
    rm_hi = max(hypot(xm0, ym0), hypot(xm_1, ym_1))
    rs_hi = max(hypot(xs0, ys0), hypot(xs_1, ys_1))
    am = xm1 * xm1 + ym1 * ym1
    ams = xs1 * xs1 + ys1 * ys1
    if am > 0.0:
        tu = _clamp01(-(xm0 * xm1 + ym0 * ym1) / am)
        rm_lo = hypot(xm0 + xm1 * tu, ym0 + ym1 * tu)
    else:
        rm_lo = hypot(xm0, ym0)
    if ams > 0.0:
        tv = _clamp01(-(xs0 * xs1 + ys0 * ys1) / ams)
        rs_lo = hypot(xs0 + xs1 * tv, ys0 + ys1 * tv)
    else:
        rs_lo = hypot(xs0, ys0)
    if rm_lo > rs_hi + eps or rs_lo > rm_hi + eps:
        return 0

    d0 = _segdist(p0, p1, q0, q1, &s0, &t0)
    if d0 <= eps:
        res[0] = 0.0
        res[1] = s0
        res[2] = t0
        return 1

    for j in range(2):
        u = <double>j
        hp = hm0 + hm1 * u
        if fabs(hs1) > eps:
            v = (hp - hs0) / hs1
            tolv = eps / fabs(hs1)
            if -tolv <= v <= 1.0 + tolv:
                us[nc] = u
                vs[nc] = _clamp01(v)
                nc += 1
        elif fabs(hp - hs0) <= eps:
            xp = xm0 + xm1 * u
            yp = ym0 + ym1 * u
            rp2 = xp * xp + yp * yp
            ncand = _quad(ams, 2.0 * (xs0 * xs1 + ys0 * ys1),
                          xs0 * xs0 + ys0 * ys0 - rp2, 0.0, 1.0, eps * eps, cand, 0)
            for k in range(ncand):
                us[nc] = u
                vs[nc] = cand[k]
                nc += 1
    for j in range(2):
        v = <double>j
        hq = hs0 + hs1 * v
        if fabs(hm1) > eps:
            u = (hq - hm0) / hm1
            tolu = eps / fabs(hm1)
            if -tolu <= u <= 1.0 + tolu:
                us[nc] = _clamp01(u)
                vs[nc] = v
                nc += 1
        elif fabs(hq - hm0) <= eps:
            xq = xs0 + xs1 * v
            yq = ys0 + ys1 * v
            rq2 = xq * xq + yq * yq
            ncand = _quad(am, 2.0 * (xm0 * xm1 + ym0 * ym1),
                          xm0 * xm0 + ym0 * ym0 - rq2, 0.0, 1.0, eps * eps, cand, 0)
            for k in range(ncand):
                us[nc] = cand[k]
                vs[nc] = v
                nc += 1

    rscale = eps * (rm_hi + rs_hi + eps)
    if fabs(hm1) > eps:
        alpha = (hs0 - hm0) / hm1
        beta = hs1 / hm1
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
            ncand = _quad(c2, c1, c0, lo, hi, rscale, cand, 0)
            for k in range(ncand):
                us[nc] = _clamp01(alpha + beta * cand[k])
                vs[nc] = cand[k]
                nc += 1
    elif fabs(hs1) > eps:
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
            ncand = _quad(c2, c1, c0, lo, hi, rscale, cand, 0)
            for k in range(ncand):
                us[nc] = cand[k]
                vs[nc] = _clamp01(alpha + beta * cand[k])
                nc += 1

    best = -1.0
    bu = 0.0
    bv = 0.0
    full = phi_abs >= TWO_PI
    for k in range(nc):
        u = us[k]
        v = vs[k]
        hm = hm0 + hm1 * u
        hs = hs0 + hs1 * v
        if fabs(hm - hs) > eps:
            continue
        xm = xm0 + xm1 * u
        ym = ym0 + ym1 * u
        xs = xs0 + xs1 * v
        ys = ys0 + ys1 * v
        rm = hypot(xm, ym)
        rs = hypot(xs, ys)
        if rm <= eps or fabs(rm - rs) > eps:
            continue
        dth = sgn * (atan2(ys, xs) - atan2(ym, xm))
        dth = fmod(dth, TWO_PI)
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
        return 0
    res[0] = best
    res[1] = bu
    res[2] = bv
    return 1


def _frame_buf(frame):
    cdef cnp.ndarray[double, ndim=1, mode="c"] fr = np.ascontiguousarray(frame, dtype=np.float64)
    if fr.shape[0] != 12:
        raise ValueError("frame must hold 12 floats")
    return fr


def sweep_pair(frame, double phi_abs, double sgn, p0, p1, q0, q1, double eps):
    cdef const double[::1] fr = _frame_buf(frame)
    cdef const double[:, ::1] seg = np.ascontiguousarray([p0, p1, q0, q1], dtype=np.float64)
    cdef double res[3]
    if _sweep_pair(&fr[0], phi_abs, sgn, &seg[0, 0], &seg[1, 0], &seg[2, 0], &seg[3, 0], eps, res):
        return res[0], res[1], res[2]
    return None


cdef bint _in_sorted(const long long* keys, Py_ssize_t n, long long key) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < n and keys[lo] == key


def sweep_range(verts, frame, double phi_abs, double sgn, Py_ssize_t m_lo, Py_ssize_t m_hi,
                Py_ssize_t s_lo, Py_ssize_t s_hi, double eps, skip_keys):
    cdef const double[:, ::1] V = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const double[::1] fr = _frame_buf(frame)
    cdef const long long[::1] keys = np.ascontiguousarray(skip_keys, dtype=np.int64)
    cdef Py_ssize_t nkeys = keys.shape[0]
    cdef long long nseg = V.shape[0] - 1
    cdef const long long* kp = &keys[0] if nkeys > 0 else NULL
    cdef Py_ssize_t mi, si
    cdef long long key, tests = 0
    cdef double res[3]
    cdef bint found = False
    cdef double best = 0.0, bu = 0.0, bv = 0.0
    cdef Py_ssize_t bmi = -1, bsi = -1
    with nogil:
        for mi in range(m_lo, m_hi):
            for si in range(s_lo, s_hi):
                if nkeys > 0:
                    key = si * nseg + mi if si < mi else mi * nseg + si
                    if _in_sorted(kp, nkeys, key):
                        continue
                tests += 1
                if _sweep_pair(&fr[0], phi_abs, sgn, &V[mi, 0], &V[mi + 1, 0],
                               &V[si, 0], &V[si + 1, 0], eps, res):
                    if not found or res[0] < best:
                        found = True
                        best = res[0]
                        bu = res[1]
                        bv = res[2]
                        bmi = mi
                        bsi = si
    return found, best, bmi, bsi, bu, bv, tests


def first_violation(verts, double eps, skip_keys):
    cdef const double[:, ::1] V = np.ascontiguousarray(verts, dtype=np.float64)
    cdef const long long[::1] keys = np.ascontiguousarray(skip_keys, dtype=np.int64)
    cdef Py_ssize_t nkeys = keys.shape[0]
    cdef const long long* kp = &keys[0] if nkeys > 0 else NULL
    cdef Py_ssize_t nseg = V.shape[0] - 1
    cdef Py_ssize_t i, j
    cdef double s, t
    cdef Py_ssize_t ri = -1, rj = -1
    with nogil:
        for i in range(nseg):
            for j in range(i + 1, nseg):
                if nkeys > 0 and _in_sorted(kp, nkeys, <long long>i * nseg + j):
                    continue
                if j == i + 1:
                    if (_segdist(&V[j + 1, 0], &V[j + 1, 0], &V[i, 0], &V[i + 1, 0], &s, &t) <= eps
                            or _segdist(&V[i, 0], &V[i, 0], &V[j, 0], &V[j + 1, 0], &s, &t) <= eps):
                        ri = i
                        rj = j
                        break
                elif _segdist(&V[i, 0], &V[i + 1, 0], &V[j, 0], &V[j + 1, 0], &s, &t) <= eps:
                    ri = i
                    rj = j
                    break
            if ri >= 0:
                break
    return ri, rj
