# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels; same API and status codes as _pykernels."""

from libc.math cimport sqrt, fabs, exp, INFINITY, NAN
from libc.math cimport sqrtl, fabsl, cosl, acosl, copysignl, powl

import numpy as np

OK = 0
ROOT_COUNT = 1
DEGENERATE = 2
INADMISSIBLE = 3
DRIFT = 4
DOMAIN = 5

BR_QUARTIC = 0
BR_RANDERS = 1
BR_MATSUMOTO = 2
BR_RIEMANNIAN = 3

SURF_INCLINE = 0
SURF_GAUSS3 = 1

cdef double ZERO_COEF = 1e-14
cdef double DENOM_EPS = 1e-13

ctypedef long double ld


cdef inline void _coeffs(double sigma, double G2, double eta, double etat, double* c) noexcept nogil:
    cdef double e1 = 1.0 - eta
    cdef double et1 = 1.0 - etat
    cdef double k = 2.0 - eta - etat
    c[0] = e1 * e1 * G2 * (1.0 - et1 * et1 * G2)
    c[1] = 2.0 * e1 * (1.0 - k * et1 * G2) * sigma
    c[2] = 1.0 - 2.0 * e1 * et1 * G2 - k * k * sigma * sigma
    c[3] = -2.0 * k * sigma
    c[4] = -1.0


def quartic_coeffs(double sigma, double G2, double eta, double etat):
    cdef double c[5]
    _coeffs(sigma, G2, eta, etat, c)
    return c[0], c[1], c[2], c[3], c[4]


cdef inline int _quad_real(ld b, ld c, ld* out, int n) noexcept nogil:
    cdef ld disc = 0.25 * b * b - c
    cdef ld tol = 0.25 * b * b
    if fabsl(c) > tol:
        tol = fabsl(c)
    if tol < 1.0:
        tol = 1.0
    tol *= 1e-12
    if disc < -tol:
        return n
    if disc < 0.0:
        disc = 0.0
    cdef ld sq = sqrtl(disc)
    cdef ld r1
    if b > 0.0:
        r1 = -0.5 * b - sq
    else:
        r1 = -0.5 * b + sq
    out[n] = r1
    if r1 != 0.0:
        out[n + 1] = c / r1
    else:
        out[n + 1] = -b - r1
    return n + 2


cdef ld _cubic_max_root(ld b, ld c, ld d) noexcept nogil:
    cdef ld p = c - b * b / 3.0
    cdef ld q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d
    cdef ld disc = 0.25 * q * q + p * p * p / 27.0
    cdef ld t, u, sq, m, arg, x, f, df, xn, fn
    cdef int i
    if disc > 0.0 and disc <= 1e-10 * (0.25 * q * q + fabsl(p * p * p) / 27.0):
        # a double root within rounding: depressed roots 2u and -u (twice)
        u = copysignl(powl(fabsl(0.5 * q), 1.0 / 3.0), -q)
        t = 2.0 * u
        if -u > t:
            t = -u
    elif disc > 0.0:
        sq = sqrtl(disc)
        if q < 0:
            u = -0.5 * q + sq
        else:
            u = -0.5 * q - sq
        u = copysignl(powl(fabsl(u), 1.0 / 3.0), u)
        if u != 0.0:
            t = u - p / (3.0 * u)
        else:
            t = 0.0
    elif p == 0.0:
        t = 0.0
    else:
        m = 2.0 * sqrtl(-p / 3.0)
        arg = 3.0 * q / (p * m)
        if arg > 1.0:
            arg = 1.0
        if arg < -1.0:
            arg = -1.0
        t = m * cosl(acosl(arg) / 3.0)
    x = t - b / 3.0
    f = ((x + b) * x + c) * x + d
    for i in range(2):
        df = (3.0 * x + 2.0 * b) * x + c
        if df == 0.0:
            break
        xn = x - f / df
        fn = ((xn + b) * xn + c) * xn + d
        if fabsl(fn) >= fabsl(f):
            break
        x = xn
        f = fn
    return x


cdef int _real_roots(double* cf, ld* roots) noexcept nogil:
    cdef ld a4 = cf[0], a3 = cf[1], a2 = cf[2], a1 = cf[3], a0 = cf[4]
    cdef double scale = fabs(cf[1])
    cdef double s2
    cdef int n = 0, i, nt
    cdef ld b, c, d, x, A, B, C, D, A2, p, q, r, shift, m, s
    cdef ld tmp[2]
    if fabs(cf[2]) > scale:
        scale = fabs(cf[2])
    if fabs(cf[3]) > scale:
        scale = fabs(cf[3])
    if fabs(cf[4]) > scale:
        scale = fabs(cf[4])
    if fabs(cf[0]) < ZERO_COEF * scale:
        s2 = fabs(cf[2])
        if fabs(cf[3]) > s2:
            s2 = fabs(cf[3])
        if fabs(cf[4]) > s2:
            s2 = fabs(cf[4])
        if fabs(cf[1]) < ZERO_COEF * s2:
            if a2 == 0.0:
                if a1 != 0.0:
                    roots[0] = -a0 / a1
                    return 1
                return 0
            return _quad_real(a1 / a2, a0 / a2, roots, 0)
        b = a2 / a3
        c = a1 / a3
        d = a0 / a3
        x = _cubic_max_root(b, c, d)
        roots[0] = x
        if x != 0.0 and fabsl(x) * fabsl(x) * fabsl(x) > fabsl(d):
            # x dominates: deflate from the constant end, forward deflation cancels
            return _quad_real((-d / x - c) / x, -d / x, roots, 1)
        return _quad_real(b + x, c + (b + x) * x, roots, 1)
    A = a3 / a4
    B = a2 / a4
    C = a1 / a4
    D = a0 / a4
    A2 = A * A
    p = B - 0.375 * A2
    q = C - 0.5 * A * B + 0.125 * A2 * A
    r = D - 0.25 * A * C + 0.0625 * A2 * B - 3.0 * A2 * A2 / 256.0
    shift = -0.25 * A
    s2 = 1.0
    if powl(fabsl(p), 1.5) > s2:
        s2 = powl(fabsl(p), 1.5)
    if powl(fabsl(r), 0.75) > s2:
        s2 = powl(fabsl(r), 0.75)
    if fabsl(q) <= 1e-14 * s2:
        nt = _quad_real(p, r, tmp, 0)
        for i in range(nt):
            if tmp[i] >= 0.0:
                s = sqrtl(tmp[i])
                roots[n] = s + shift
                roots[n + 1] = -s + shift
                n += 2
        return n
    m = _cubic_max_root(p, 0.25 * p * p - r, -0.125 * q * q)
    if m <= 0.0:
        m = 1e-300
    s = sqrtl(2.0 * m)
    n = _quad_real(s, 0.5 * p + m - q / (2.0 * s), roots, 0)
    n = _quad_real(-s, 0.5 * p + m + q / (2.0 * s), roots, n)
    for i in range(n):
        roots[i] += shift
    return n


cdef inline void _sides(double phi, double sigma, double G2, double eta, double etat,
                        double* lhs, double* rhs) noexcept nogil:
    cdef double e1 = 1.0 - eta
    cdef double rad = 1.0 + 2.0 * e1 * sigma * phi + e1 * e1 * G2 * phi * phi
    if rad < 0.0:
        rad = 0.0
    lhs[0] = phi * sqrt(rad)
    rhs[0] = 1.0 + (2.0 - eta - etat) * sigma * phi + e1 * (1.0 - etat) * G2 * phi * phi


cdef double _phi_root(double sigma, double G2, double eta, double etat, int* branch, int* status) noexcept nogil:
    cdef double den, e1, lam, sq, z, p, dp, lhs, rhs, zn, pn
    cdef double cf[5]
    cdef double rev[5]
    cdef double cand[4]
    cdef ld roots[4]
    cdef int nr, nc = 0, i, j, it, dup
    status[0] = 0
    if (eta == 1.0 and etat == 1.0) or G2 == 0.0:
        branch[0] = 3
        return 1.0
    if eta == 1.0:
        branch[0] = 2
        den = 1.0 - (1.0 - etat) * sigma
        if den <= 0.0:
            status[0] = 1
            return NAN
        return 1.0 / den
    if eta == etat:
        branch[0] = 1
        e1 = 1.0 - eta
        lam = 1.0 - e1 * e1 * G2
        if lam <= 0.0:
            status[0] = 1
            return NAN
        sq = sqrt(lam + e1 * e1 * sigma * sigma)
        if sigma >= 0.0:
            return (sq + e1 * sigma) / lam
        return 1.0 / (sq - e1 * sigma)
    branch[0] = 0
    _coeffs(sigma, G2, eta, etat, cf)
    if fabs(cf[0]) < fabs(cf[4]):
        # weak wind: solve the reversed quartic in 1/phi (see _pykernels.phi_root)
        for i in range(5):
            rev[i] = cf[4 - i]
        nr = _real_roots(rev, roots)
        for i in range(nr):
            if roots[i] > 0.0:
                roots[i] = 1.0 / roots[i]
            else:
                roots[i] = -1.0
    else:
        nr = _real_roots(cf, roots)
    for i in range(nr):
        z = <double>roots[i]
        if not z > 0.0:
            continue
        p = (((cf[0] * z + cf[1]) * z + cf[2]) * z + cf[3]) * z + cf[4]
        dp = ((4.0 * cf[0] * z + 3.0 * cf[1]) * z + 2.0 * cf[2]) * z + cf[3]
        for it in range(3):
            if dp == 0.0:
                break
            zn = z - p / dp
            pn = (((cf[0] * zn + cf[1]) * zn + cf[2]) * zn + cf[3]) * zn + cf[4]
            if fabs(pn) >= fabs(p):
                break
            z = zn
            p = pn
            dp = ((4.0 * cf[0] * z + 3.0 * cf[1]) * z + 2.0 * cf[2]) * z + cf[3]
        if not z > 0.0:
            continue
        # reject the isolated point v = (1-eta)G^T and sign-flipped roots
        # (see _pykernels.phi_root)
        _sides(z, sigma, G2, eta, etat, &lhs, &rhs)
        if lhs < 0.25 * z * z or fabs(lhs - rhs) > 1e-6 * (fabs(rhs) if fabs(rhs) > 1.0 else 1.0):
            continue
        dup = 0
        for j in range(nc):
            if fabs(z - cand[j]) <= 1e-9 * (z if z > 1.0 else 1.0):
                dup = 1
        if not dup:
            cand[nc] = z
            nc += 1
    if nc != 1:
        status[0] = 1
        return NAN
    return cand[0]


def phi_root(double sigma, double G2, double eta, double etat):
    cdef int br = 0, st = 0
    cdef double phi = _phi_root(sigma, G2, eta, etat, &br, &st)
    return phi, br, st


def phi_residual(double phi, double sigma, double G2, double eta, double etat):
    cdef double lhs, rhs
    _sides(phi, sigma, G2, eta, etat, &lhs, &rhs)
    return lhs - rhs, max(fabs(lhs), fabs(rhs))


cdef inline double _slope_F(double f1, double f2, double y1, double y2, double gbar,
                            double eta, double etat, int* branch, int* status) noexcept nogil:
    cdef double beta = f1 * y1 + f2 * y2
    cdef double alpha = sqrt(y1 * y1 + y2 * y2 + beta * beta)
    cdef double q = f1 * f1 + f2 * f2
    cdef double G2 = gbar * gbar * q / (1.0 + q)
    if alpha == 0.0:
        branch[0] = 3
        status[0] = 0
        return 0.0
    return alpha * _phi_root(gbar * beta / alpha, G2, eta, etat, branch, status)


def slope_F(double f1, double f2, double y1, double y2, double gbar, double eta, double etat):
    cdef int br = 0, st = 0
    cdef double beta = f1 * y1 + f2 * y2
    cdef double alpha = sqrt(y1 * y1 + y2 * y2 + beta * beta)
    cdef double F = _slope_F(f1, f2, y1, y2, gbar, eta, etat, &br, &st)
    return F, alpha, beta, br, st


def wind_bound(double eta, double etat):
    if eta == 1.0 and etat == 1.0:
        return INFINITY
    if eta >= etat:
        if etat > 2.0 * eta - 1.0:
            return 1.0 / (1.0 - etat)
        return 1.0 / (2.0 * (eta - etat))
    if eta > (3.0 * etat - 1.0) / 2.0:
        return 1.0 / (1.0 - etat)
    return 1.0 / (2.0 * (etat - eta))


cdef int _spray(double f1, double f2, double f11, double f12, double f22,
                double y1, double y2, double gbar, double eta, double etat,
                double* g) noexcept nogil:
    cdef double opq = 1.0 + f1 * f1 + f2 * f2
    cdef double beta = f1 * y1 + f2 * y2
    cdef double a2 = y1 * y1 + y2 * y2 + beta * beta
    cdef double al = sqrt(a2)
    cdef double hy1 = f11 * y1 + f12 * y2
    cdef double hy2 = f12 * y1 + f22 * y2
    cdef double hf1 = f11 * f1 + f12 * f2
    cdef double hf2 = f12 * f1 + f22 * f2
    cdef double r00 = (y1 * hy1 + y2 * hy2) / opq
    cdef double opq2 = opq * opq
    cdef double opq3 = opq2 * opq
    cdef double r0 = (f1 * hy1 + f2 * hy2) / opq2
    cdef double r = (f1 * hf1 + f2 * hf2) / opq3
    cdef double ru1 = ((1.0 + f2 * f2) * hf1 - f1 * f2 * hf2) / opq3
    cdef double ru2 = ((1.0 + f1 * f1) * hf2 - f1 * f2 * hf1) / opq3
    cdef double G2, e1, et1, k, d, d2, gb, a4, a6, A, B, C, E, sc, gg, core
    cdef double R, Th, Ps, Om, Pi, big, cy, cb
    g[0] = 0.5 * r00 * f1
    g[1] = 0.5 * r00 * f2
    if gbar == 0.0 or (eta == 1.0 and etat == 1.0):
        return 0
    G2 = gbar * gbar * (opq - 1.0) / opq
    e1 = 1.0 - eta
    et1 = 1.0 - etat
    k = 2.0 - eta - etat
    d = etat - eta
    d2 = d * d
    gb = gbar * beta
    a4 = a2 * a2
    a6 = a4 * a2
    A = -(e1 * (1.0 - k * et1 * G2) - k * k * gb - k * a2) / a2
    B = -((1.0 - 2.0 * e1 * et1 * G2) - 2.0 * k * gb - 2.0 * a2) / a2
    C = (a2 * B + gb * A) / al
    E = a6 * B * C * C + (G2 * a2 - gb * gb) * (a4 * A * A * B + d2)
    sc = a6 if a6 > 1.0 else 1.0
    if fabs(B) < DENOM_EPS or fabs(C) < DENOM_EPS or fabs(E) < DENOM_EPS * sc:
        g[0] = NAN
        g[1] = NAN
        return 2
    gg = gbar * gbar
    core = et1 * a2 * B - d
    R = e1 * gg / (2.0 * a4 * B) * core
    Th = gbar * al / (2.0 * E) * (a6 * A * B * B - d2 * gb)
    Ps = gg * a2 / (2.0 * E) * (a4 * A * A * B + d2)
    Om = e1 * gg / (a2 * B * E) * (
        core * (a6 * B * B * B + d2 * G2) - d2 * a2 * (gb * B + G2 * A))
    Pi = e1 * gg * gbar / (2.0 * a2 * al * B * E) * (
        core * (2.0 * a6 * A * B * B - d2 * gb) + d2 * a2 * B * (2.0 * a2 + e1 * gb))
    big = r00 + 2.0 * a2 * R * r
    cy = (Th * big + al * Om * r0) / al
    cb = (Ps * big + al * Pi * r0) / opq
    g[0] += cy * y1 + cb * f1 - a2 * R * ru1
    g[1] += cy * y2 + cb * f2 - a2 * R * ru2
    return 0


def spray_tilde(double f1, double f2, double f11, double f12, double f22,
                double y1, double y2, double gbar, double eta, double etat):
    cdef double g[2]
    cdef int st = _spray(f1, f2, f11, f12, f22, y1, y2, gbar, eta, etat, g)
    return g[0], g[1], st


cdef inline void _gauss3(double x1, double x2, double* j) noexcept nogil:
    cdef double cs[3]
    cdef double us[3]
    cdef double vs[3]
    cdef double e, u, v
    cdef int i
    cs[0] = 0.5; us[0] = x1 - 1.0; vs[0] = x2 + 1.0
    cs[1] = 0.75; us[1] = x1 + 1.0; vs[1] = x2 + 1.0
    cs[2] = 1.0; us[2] = x1; vs[2] = x2 - 1.0
    for i in range(6):
        j[i] = 0.0
    for i in range(3):
        u = us[i]
        v = vs[i]
        e = cs[i] * exp(-(u * u + v * v))
        j[0] += e
        j[1] -= 2.0 * u * e
        j[2] -= 2.0 * v * e
        j[3] += (4.0 * u * u - 2.0) * e
        j[4] += 4.0 * u * v * e
        j[5] += (4.0 * v * v - 2.0) * e


cdef inline void _jet(int kind, double a, double x1, double x2, double* j) noexcept nogil:
    if kind == 0:
        j[0] = a * x1
        j[1] = a
        j[2] = 0.0
        j[3] = 0.0
        j[4] = 0.0
        j[5] = 0.0
    else:
        _gauss3(x1, x2, j)


def incline_jet(double a, double x1, double x2):
    return a * x1, a, 0.0, 0.0, 0.0, 0.0


def gauss3_jet(double x1, double x2):
    cdef double j[6]
    _gauss3(x1, x2, j)
    return j[0], j[1], j[2], j[3], j[4], j[5]


cdef inline int _accel(int kind, double a, double x1, double x2, double y1, double y2,
                       double gbar, double eta, double etat, double* acc) noexcept nogil:
    cdef double j[6]
    cdef int st
    _jet(kind, a, x1, x2, j)
    st = _spray(j[1], j[2], j[3], j[4], j[5], y1, y2, gbar, eta, etat, acc)
    acc[0] *= -2.0
    acc[1] *= -2.0
    return st


cdef int _integrate(int kind, double a, double x1, double x2, double y1, double y2,
                    double gbar, double eta, double etat, double dt, int nsteps,
                    double drift_tol, double bound, int renorm, double[:, ::1] out,
                    int* ndone) noexcept nogil:
    cdef double j[6]
    cdef double k1[2]
    cdef double k2[2]
    cdef double k3[2]
    cdef double k4[2]
    cdef double h = dt, sx1, sx2, sy1, sy2, q, F
    cdef double v1x, v1y, v2x, v2y, v3x, v3y, v4x, v4y
    cdef int n, st, br = 0
    _jet(kind, a, x1, x2, j)
    F = _slope_F(j[1], j[2], y1, y2, gbar, eta, etat, &br, &st)
    out[0, 0] = 0.0
    out[0, 1] = x1
    out[0, 2] = x2
    out[0, 3] = y1
    out[0, 4] = y2
    out[0, 5] = F - 1.0
    ndone[0] = 0
    for n in range(nsteps):
        v1x = y1; v1y = y2
        st = _accel(kind, a, x1, x2, y1, y2, gbar, eta, etat, k1)
        if st:
            return st
        sx1 = x1 + 0.5 * h * v1x; sx2 = x2 + 0.5 * h * v1y
        sy1 = y1 + 0.5 * h * k1[0]; sy2 = y2 + 0.5 * h * k1[1]
        v2x = sy1; v2y = sy2
        st = _accel(kind, a, sx1, sx2, sy1, sy2, gbar, eta, etat, k2)
        if st:
            return st
        sx1 = x1 + 0.5 * h * v2x; sx2 = x2 + 0.5 * h * v2y
        sy1 = y1 + 0.5 * h * k2[0]; sy2 = y2 + 0.5 * h * k2[1]
        v3x = sy1; v3y = sy2
        st = _accel(kind, a, sx1, sx2, sy1, sy2, gbar, eta, etat, k3)
        if st:
            return st
        sx1 = x1 + h * v3x; sx2 = x2 + h * v3y
        sy1 = y1 + h * k3[0]; sy2 = y2 + h * k3[1]
        v4x = sy1; v4y = sy2
        st = _accel(kind, a, sx1, sx2, sy1, sy2, gbar, eta, etat, k4)
        if st:
            return st
        x1 += h / 6.0 * (v1x + 2.0 * v2x + 2.0 * v3x + v4x)
        x2 += h / 6.0 * (v1y + 2.0 * v2y + 2.0 * v3y + v4y)
        y1 += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        y2 += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        _jet(kind, a, x1, x2, j)
        q = j[1] * j[1] + j[2] * j[2]
        if gbar * sqrt(q / (1.0 + q)) >= bound:
            return 3
        F = _slope_F(j[1], j[2], y1, y2, gbar, eta, etat, &br, &st)
        if st:
            return st
        if renorm:
            y1 /= F
            y2 /= F
        out[n + 1, 0] = (n + 1) * h
        out[n + 1, 1] = x1
        out[n + 1, 2] = x2
        out[n + 1, 3] = y1
        out[n + 1, 4] = y2
        out[n + 1, 5] = F - 1.0
        ndone[0] = n + 1
        if fabs(F - 1.0) > drift_tol:
            return 4
    return 0


def integrate_builtin(int kind, double a, double x1, double x2, double y1, double y2,
                      double gbar, double eta, double etat, double dt, int nsteps,
                      double drift_tol, double bound, bint renorm):
    """Fixed-step RK4 on a built-in surface; releases the GIL while stepping."""
    out_arr = np.zeros((nsteps + 1, 6))
    cdef double[:, ::1] out = out_arr
    cdef int ndone = 0, st
    cdef int rn = 1 if renorm else 0
    with nogil:
        st = _integrate(kind, a, x1, x2, y1, y2, gbar, eta, etat, dt, nsteps,
                        drift_tol, bound, rn, out, &ndone)
    return out_arr, st, ndone


def real_roots(double a4, double a3, double a2, double a1, double a0):
    """Unpolished real roots of the quartic (diagnostics)."""
    cdef double cf[5]
    cdef ld roots[4]
    cdef int n, i
    cf[0] = a4; cf[1] = a3; cf[2] = a2; cf[3] = a1; cf[4] = a0
    n = _real_roots(cf, roots)
    return [<double>roots[i] for i in range(n)]
