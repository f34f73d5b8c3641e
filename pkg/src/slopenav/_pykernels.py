"""Pure-Python numerical kernels.

Mirror of ``_ckernels.pyx``; the two modules expose the same functions and
status codes so the rest of the package never needs to know which one is
loaded.
"""

import math

import numpy as np

# status codes shared with the compiled kernels
OK = 0
ROOT_COUNT = 1
DEGENERATE = 2
INADMISSIBLE = 3
DRIFT = 4
DOMAIN = 5

# metric branches
BR_QUARTIC = 0
BR_RANDERS = 1
BR_MATSUMOTO = 2
BR_RIEMANNIAN = 3

SURF_INCLINE = 0
SURF_GAUSS3 = 1

_ZERO_COEF = 1e-14
_DENOM_EPS = 1e-13


def quartic_coeffs(sigma, G2, eta, etat):
    """Coefficients (a4, a3, a2, a1, a0) of the quartic in phi = F/alpha.

    sigma is gbar*beta/alpha and G2 the squared wind norm.
    """
    e1 = 1.0 - eta
    et1 = 1.0 - etat
    k = 2.0 - eta - etat
    a4 = e1 * e1 * G2 * (1.0 - et1 * et1 * G2)
    a3 = 2.0 * e1 * (1.0 - k * et1 * G2) * sigma
    a2 = 1.0 - 2.0 * e1 * et1 * G2 - k * k * sigma * sigma
    a1 = -2.0 * k * sigma
    return a4, a3, a2, a1, -1.0


def _horner(c, x):
    a4, a3, a2, a1, a0 = c
    p = (((a4 * x + a3) * x + a2) * x + a1) * x + a0
    dp = ((4.0 * a4 * x + 3.0 * a3) * x + 2.0 * a2) * x + a1
    return p, dp


def _quad_real(b, c, out):
    # real roots of x^2 + b x + c, near-double roots kept
    disc = 0.25 * b * b - c
    tol = 1e-12 * max(1.0, 0.25 * b * b, abs(c))
    if disc < -tol:
        return
    if disc < 0.0:
        disc = 0.0
    sq = math.sqrt(disc)
    if b > 0.0:
        r1 = -0.5 * b - sq
    else:
        r1 = -0.5 * b + sq
    out.append(r1)
    if r1 != 0.0:
        out.append(c / r1)
    else:
        out.append(-b - r1)


def _cubic_max_root(b, c, d):
    # largest real root of x^3 + b x^2 + c x + d
    p = c - b * b / 3.0
    q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d
    disc = 0.25 * q * q + p * p * p / 27.0
    if 0.0 < disc <= 1e-10 * (0.25 * q * q + abs(p * p * p) / 27.0):
        # a double root within rounding: depressed roots 2u and -u (twice)
        u = math.copysign(abs(0.5 * q) ** (1.0 / 3.0), -q)
        t = max(2.0 * u, -u)
    elif disc > 0.0:
        sq = math.sqrt(disc)
        u = -0.5 * q + sq if q < 0 else -0.5 * q - sq
        u = math.copysign(abs(u) ** (1.0 / 3.0), u)
        t = u - p / (3.0 * u) if u != 0.0 else 0.0
    elif p == 0.0:
        t = 0.0
    else:
        m = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * m)
        arg = max(-1.0, min(1.0, arg))
        t = m * math.cos(math.acos(arg) / 3.0)
    x = t - b / 3.0
    f = ((x + b) * x + c) * x + d
    for _ in range(2):
        df = (3.0 * x + 2.0 * b) * x + c
        if df == 0.0:
            break
        xn = x - f / df
        fn = ((xn + b) * xn + c) * xn + d
        if abs(fn) >= abs(f):
            break
        x, f = xn, fn
    return x


def _real_roots(c):
    """Real roots of the quartic (degree may collapse), unpolished."""
    a4, a3, a2, a1, a0 = c
    scale = max(abs(a3), abs(a2), abs(a1), abs(a0))
    roots = []
    if abs(a4) < _ZERO_COEF * scale:
        if abs(a3) < _ZERO_COEF * max(abs(a2), abs(a1), abs(a0)):
            if a2 == 0.0:
                if a1 != 0.0:
                    roots.append(-a0 / a1)
                return roots
            _quad_real(a1 / a2, a0 / a2, roots)
            return roots
        b, cc, d = a2 / a3, a1 / a3, a0 / a3
        x = _cubic_max_root(b, cc, d)
        roots.append(x)
        if x != 0.0 and abs(x) ** 3 > abs(d):
            # x dominates: deflate from the constant end, forward deflation cancels
            e0 = -d / x
            _quad_real((e0 - cc) / x, e0, roots)
        else:
            _quad_real(b + x, cc + (b + x) * x, roots)
        return roots
    A, B, C, D = a3 / a4, a2 / a4, a1 / a4, a0 / a4
    A2 = A * A
    p = B - 0.375 * A2
    q = C - 0.5 * A * B + 0.125 * A2 * A
    r = D - 0.25 * A * C + 0.0625 * A2 * B - 3.0 * A2 * A2 / 256.0
    shift = -0.25 * A
    if abs(q) <= 1e-14 * max(1.0, abs(p) ** 1.5, abs(r) ** 0.75):
        tmp = []
        _quad_real(p, r, tmp)
        for z in tmp:
            if z >= 0.0:
                s = math.sqrt(z)
                roots.append(s + shift)
                roots.append(-s + shift)
        return roots
    m = _cubic_max_root(p, 0.25 * p * p - r, -0.125 * q * q)
    if m <= 0.0:
        m = 1e-300
    s = math.sqrt(2.0 * m)
    _quad_real(s, 0.5 * p + m - q / (2.0 * s), roots)
    _quad_real(-s, 0.5 * p + m + q / (2.0 * s), roots)
    return [z + shift for z in roots]


def phi_root(sigma, G2, eta, etat):
    """Unique positive root phi of the slope quartic. Returns (phi, branch, status)."""
    if (eta == 1.0 and etat == 1.0) or G2 == 0.0:
        return 1.0, BR_RIEMANNIAN, OK
    if eta == 1.0:
        den = 1.0 - (1.0 - etat) * sigma
        if den <= 0.0:
            return math.nan, BR_MATSUMOTO, ROOT_COUNT
        return 1.0 / den, BR_MATSUMOTO, OK
    if eta == etat:
        e1 = 1.0 - eta
        lam = 1.0 - e1 * e1 * G2
        if lam <= 0.0:
            return math.nan, BR_RANDERS, ROOT_COUNT
        sq = math.sqrt(lam + e1 * e1 * sigma * sigma)
        if sigma >= 0.0:
            return (sq + e1 * sigma) / lam, BR_RANDERS, OK
        return 1.0 / (sq - e1 * sigma), BR_RANDERS, OK
    c = quartic_coeffs(sigma, G2, eta, etat)
    if abs(c[0]) < abs(c[4]):
        # weak wind: the leading coefficients vanish and spurious roots run off
        # to ~1/|G|; the reversed quartic in 1/phi keeps every root bounded
        zs = [1.0 / w for w in _real_roots(c[::-1]) if w > 0.0]
    else:
        zs = _real_roots(c)
    cand = []
    for z in zs:
        if not z > 0.0:
            continue
        p, dp = _horner(c, z)
        for _ in range(3):
            # Newton step kept only while it shrinks |p|; near-double roots
            # (tiny dp) would otherwise jump to a neighbouring root
            if dp == 0.0:
                break
            zn = z - p / dp
            pn, dpn = _horner(c, zn)
            if abs(pn) >= abs(p):
                break
            z, p, dp = zn, pn, dpn
        if not z > 0.0:
            continue
        # lhs/phi^2 = |v - (1-eta)G^T| with v the resultant velocity. For the true
        # root this is 1 + (eta-etat)|G|cos(theta) > 1/2 inside the convexity
        # bound. Squaring adds the isolated point v = (1-eta)G^T (downhill rays)
        # and roots with lhs = -rhs; both are rejected here.
        lhs, rhs = _sides(z, sigma, G2, eta, etat)
        if lhs < 0.25 * z * z or abs(lhs - rhs) > 1e-6 * max(1.0, abs(rhs)):
            continue
        if all(abs(z - w) > 1e-9 * max(1.0, z) for w in cand):
            cand.append(z)
    if len(cand) != 1:
        return math.nan, BR_QUARTIC, ROOT_COUNT
    return cand[0], BR_QUARTIC, OK


def _sides(phi, sigma, G2, eta, etat):
    e1 = 1.0 - eta
    lhs = phi * math.sqrt(max(0.0, 1.0 + 2.0 * e1 * sigma * phi + e1 * e1 * G2 * phi * phi))
    rhs = 1.0 + (2.0 - eta - etat) * sigma * phi + e1 * (1.0 - etat) * G2 * phi * phi
    return lhs, rhs


def phi_residual(phi, sigma, G2, eta, etat):
    """Left minus right side of the irrational defining equation (divided by alpha^2)."""
    lhs, rhs = _sides(phi, sigma, G2, eta, etat)
    return lhs - rhs, max(abs(lhs), abs(rhs))


def slope_F(f1, f2, y1, y2, gbar, eta, etat):
    """Slope metric F at a tangent vector. Returns (F, alpha, beta, branch, status)."""
    beta = f1 * y1 + f2 * y2
    alpha = math.sqrt(y1 * y1 + y2 * y2 + beta * beta)
    q = f1 * f1 + f2 * f2
    G2 = gbar * gbar * q / (1.0 + q)
    if alpha == 0.0:
        return 0.0, alpha, beta, BR_RIEMANNIAN, OK
    phi, br, st = phi_root(gbar * beta / alpha, G2, eta, etat)
    return alpha * phi, alpha, beta, br, st


def wind_bound(eta, etat):
    if eta == 1.0 and etat == 1.0:
        return math.inf
    if eta >= etat:
        if etat > 2.0 * eta - 1.0:
            return 1.0 / (1.0 - etat)
        return 1.0 / (2.0 * (eta - etat))
    if eta > (3.0 * etat - 1.0) / 2.0:
        return 1.0 / (1.0 - etat)
    return 1.0 / (2.0 * (etat - eta))


def spray_tilde(f1, f2, f11, f12, f22, y1, y2, gbar, eta, etat):
    """Spray coefficients on the indicatrix F = 1. Returns (G1, G2, status)."""
    opq = 1.0 + f1 * f1 + f2 * f2
    beta = f1 * y1 + f2 * y2
    a2 = y1 * y1 + y2 * y2 + beta * beta
    al = math.sqrt(a2)
    hy1 = f11 * y1 + f12 * y2
    hy2 = f12 * y1 + f22 * y2
    hf1 = f11 * f1 + f12 * f2
    hf2 = f12 * f1 + f22 * f2
    r00 = (y1 * hy1 + y2 * hy2) / opq
    opq2 = opq * opq
    opq3 = opq2 * opq
    r0 = (f1 * hy1 + f2 * hy2) / opq2
    r = (f1 * hf1 + f2 * hf2) / opq3
    ru1 = ((1.0 + f2 * f2) * hf1 - f1 * f2 * hf2) / opq3
    ru2 = ((1.0 + f1 * f1) * hf2 - f1 * f2 * hf1) / opq3
    g1 = 0.5 * r00 * f1
    g2 = 0.5 * r00 * f2
    if gbar == 0.0 or (eta == 1.0 and etat == 1.0):
        return g1, g2, OK
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
    sc = max(1.0, a6)
    if abs(B) < _DENOM_EPS or abs(C) < _DENOM_EPS or abs(E) < _DENOM_EPS * sc:
        return math.nan, math.nan, DEGENERATE
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
    g1 += cy * y1 + cb * f1 - a2 * R * ru1
    g2 += cy * y2 + cb * f2 - a2 * R * ru2
    return g1, g2, OK


def incline_jet(a, x1, x2):
    return a * x1, a, 0.0, 0.0, 0.0, 0.0


def gauss3_jet(x1, x2):
    # f = 1/2 e^{-rho1} + 3/4 e^{-rho2} + e^{-rho3}
    f = f1 = f2 = f11 = f12 = f22 = 0.0
    for c, u, v in ((0.5, x1 - 1.0, x2 + 1.0), (0.75, x1 + 1.0, x2 + 1.0), (1.0, x1, x2 - 1.0)):
        e = c * math.exp(-(u * u + v * v))
        f += e
        f1 -= 2.0 * u * e
        f2 -= 2.0 * v * e
        f11 += (4.0 * u * u - 2.0) * e
        f12 += 4.0 * u * v * e
        f22 += (4.0 * v * v - 2.0) * e
    return f, f1, f2, f11, f12, f22


def _jet(kind, a, x1, x2):
    if kind == SURF_INCLINE:
        return incline_jet(a, x1, x2)
    return gauss3_jet(x1, x2)


def _accel(kind, a, x1, x2, y1, y2, gbar, eta, etat):
    j = _jet(kind, a, x1, x2)
    g1, g2, st = spray_tilde(j[1], j[2], j[3], j[4], j[5], y1, y2, gbar, eta, etat)
    return -2.0 * g1, -2.0 * g2, st


def integrate_builtin(kind, a, x1, x2, y1, y2, gbar, eta, etat, dt, nsteps,
                      drift_tol, bound, renorm):
    """Fixed-step RK4 for a built-in surface.

    Returns (rows, status, n_done) where rows has shape (nsteps+1, 6) holding
    t, x1, x2, y1, y2, F-1; only the first n_done+1 rows are valid.
    """
    out = np.zeros((nsteps + 1, 6))
    j = _jet(kind, a, x1, x2)
    F0 = slope_F(j[1], j[2], y1, y2, gbar, eta, etat)[0]
    out[0] = (0.0, x1, x2, y1, y2, F0 - 1.0)
    h = dt
    for n in range(nsteps):
        k1x, k1y = (y1, y2), _accel(kind, a, x1, x2, y1, y2, gbar, eta, etat)
        sx1 = x1 + 0.5 * h * k1x[0]; sx2 = x2 + 0.5 * h * k1x[1]
        sy1 = y1 + 0.5 * h * k1y[0]; sy2 = y2 + 0.5 * h * k1y[1]
        k2x, k2y = (sy1, sy2), _accel(kind, a, sx1, sx2, sy1, sy2, gbar, eta, etat)
        sx1 = x1 + 0.5 * h * k2x[0]; sx2 = x2 + 0.5 * h * k2x[1]
        sy1 = y1 + 0.5 * h * k2y[0]; sy2 = y2 + 0.5 * h * k2y[1]
        k3x, k3y = (sy1, sy2), _accel(kind, a, sx1, sx2, sy1, sy2, gbar, eta, etat)
        sx1 = x1 + h * k3x[0]; sx2 = x2 + h * k3x[1]
        sy1 = y1 + h * k3y[0]; sy2 = y2 + h * k3y[1]
        k4x, k4y = (sy1, sy2), _accel(kind, a, sx1, sx2, sy1, sy2, gbar, eta, etat)
        for k in (k1y, k2y, k3y, k4y):
            if k[2] != OK:
                return out, k[2], n
        x1 += h / 6.0 * (k1x[0] + 2.0 * k2x[0] + 2.0 * k3x[0] + k4x[0])
        x2 += h / 6.0 * (k1x[1] + 2.0 * k2x[1] + 2.0 * k3x[1] + k4x[1])
        y1 += h / 6.0 * (k1y[0] + 2.0 * k2y[0] + 2.0 * k3y[0] + k4y[0])
        y2 += h / 6.0 * (k1y[1] + 2.0 * k2y[1] + 2.0 * k3y[1] + k4y[1])
        j = _jet(kind, a, x1, x2)
        q = j[1] * j[1] + j[2] * j[2]
        if gbar * math.sqrt(q / (1.0 + q)) >= bound:
            return out, INADMISSIBLE, n
        F, _, _, _, st = slope_F(j[1], j[2], y1, y2, gbar, eta, etat)
        if st != OK:
            return out, st, n
        if renorm:
            y1 /= F
            y2 /= F
        out[n + 1] = ((n + 1) * h, x1, x2, y1, y2, F - 1.0)
        if abs(F - 1.0) > drift_tol:
            return out, DRIFT, n + 1
    return out, OK, nsteps


def real_roots(a4, a3, a2, a1, a0):
    """Unpolished real roots of the quartic (diagnostics)."""
    return _real_roots((a4, a3, a2, a1, a0))
