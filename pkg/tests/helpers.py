"""Shared samplers and independent oracles for the test suite."""

import math
import random

import numpy as np

from slopenav import kernels
from slopenav.params import classify
from slopenav.surface import parse_surface, point_geometry

GAUSS3 = parse_surface("gauss3")


def random_params(rng, riem=False):
    while True:
        p = classify(rng.random(), rng.random())
        if riem or not p.is_riemannian:
            return p


def random_state(rng, surface="gauss3", box=2.0, frac=0.9, params=None):
    """(geom, params, y) with the wind strictly inside the convexity bound at the point."""
    surface = parse_surface(surface)
    p = params or random_params(rng)
    while True:
        x1, x2 = rng.uniform(-box, box), rng.uniform(-box, box)
        j = surface.jet(x1, x2)
        q = j.g1 ** 2 + j.g2 ** 2
        if q > 1e-6:
            break
    A = math.sqrt(q / (1 + q))
    gmax = min(p.windBound, 4.0) / A
    gbar = rng.uniform(0.05, frac) * gmax
    geom = point_geometry(surface, x1, x2, gbar)
    ang = rng.uniform(0, 2 * math.pi)
    y = (rng.uniform(0.3, 2.0) * math.cos(ang), rng.uniform(0.3, 2.0) * math.sin(ang))
    return geom, p, y


def F_at(surface, x, y, gbar, p):
    j = surface.jet(x[0], x[1])
    F, _, _, _, st = kernels.slope_F(j.g1, j.g2, y[0], y[1], gbar, p.eta, p.etaTilde)
    assert st == kernels.OK
    return F


def fd_spray(surface, x, y, gbar, p, h=1e-4):
    """Euler-Lagrange spray G = 1/4 g^{-1} ([F^2]_{x y} y - [F^2]_x) by central differences."""
    surface = parse_surface(surface)
    x = np.asarray(x, float)
    y = np.asarray(y, float)

    def L(xx, yy):
        return F_at(surface, xx, yy, gbar, p) ** 2

    E = np.eye(2)
    g = np.empty((2, 2))
    for i in range(2):
        for k in range(2):
            g[i, k] = (L(x, y + h * E[i] + h * E[k]) - L(x, y + h * E[i] - h * E[k])
                       - L(x, y - h * E[i] + h * E[k]) + L(x, y - h * E[i] - h * E[k])) / (8 * h * h)
    M = np.empty((2, 2))  # M[k, l] = d^2 L / dx^k dy^l
    for k in range(2):
        for l in range(2):
            M[k, l] = (L(x + h * E[k], y + h * E[l]) - L(x + h * E[k], y - h * E[l])
                       - L(x - h * E[k], y + h * E[l]) + L(x - h * E[k], y - h * E[l])) / (4 * h * h)
    dx = np.array([(L(x + h * E[k], y) - L(x - h * E[k], y)) / (2 * h) for k in range(2)])
    return 0.25 * np.linalg.solve(g, M.T @ y - dx)


def riemannian_spray(surface, x, y):
    """Geodesic spray of h = I + df df^T: G^i = 1/2 f_i f_jk y^j y^k / (1 + q)."""
    f1, f2, f11, f12, f22 = parse_surface(surface).derivs(x[0], x[1])
    quad = f11 * y[0] ** 2 + 2 * f12 * y[0] * y[1] + f22 * y[1] ** 2
    c = 0.5 * quad / (1 + f1 * f1 + f2 * f2)
    return np.array([c * f1, c * f2])


def rng(seed=0):
    return random.Random(seed)


# --- high-precision oracles (mpmath) ---------------------------------------

import mpmath as mp  # noqa: E402

_BUMPS = ((0.5, 1.0, -1.0), (0.75, -1.0, -1.0), (1.0, 0.0, 1.0))


def mp_gauss3_grad(x1, x2):
    f1 = f2 = mp.mpf(0)
    for c, a, b in _BUMPS:
        u, v = x1 - a, x2 - b
        e = c * mp.exp(-(u * u + v * v))
        f1 -= 2 * u * e
        f2 -= 2 * v * e
    return f1, f2


def mp_phi(sigma, G2, eta, etat):
    """Positive root of the slope quartic, seeded by the kernel and Newton-polished in mp."""
    e1, et1, k = 1 - eta, 1 - etat, 2 - eta - etat
    a4 = e1 * e1 * G2 * (1 - et1 * et1 * G2)
    a3 = 2 * e1 * (1 - k * et1 * G2) * sigma
    a2 = 1 - 2 * e1 * et1 * G2 - k * k * sigma * sigma
    a1 = -2 * k * sigma
    z, _, st = kernels.phi_root(float(sigma), float(G2), float(eta), float(etat))
    assert st == kernels.OK
    z = mp.mpf(z)
    for _ in range(6):
        p = (((a4 * z + a3) * z + a2) * z + a1) * z - 1
        dp = ((4 * a4 * z + 3 * a3) * z + 2 * a2) * z + a1
        z -= p / dp
    return z


def mp_F2(x, y, gbar, eta, etat, grad=mp_gauss3_grad):
    f1, f2 = grad(x[0], x[1])
    q = f1 * f1 + f2 * f2
    beta = f1 * y[0] + f2 * y[1]
    al = mp.sqrt(y[0] * y[0] + y[1] * y[1] + beta * beta)
    G2 = gbar * gbar * q / (1 + q)
    phi = mp_phi(gbar * beta / al, G2, eta, etat)
    return (al * phi) ** 2


def mp_fd_spray(x, y, gbar, p, grad=mp_gauss3_grad, dps=40, h=1e-12):
    """Euler-Lagrange spray from F^2 with central differences at `dps` digits."""
    with mp.workdps(dps):
        X = [mp.mpf(float(v)) for v in x]
        Y = [mp.mpf(float(v)) for v in y]
        gb, eta, etat = mp.mpf(float(gbar)), mp.mpf(p.eta), mp.mpf(p.etaTilde)
        h = mp.mpf(h)

        def L(dx, dy):
            return mp_F2([X[0] + dx[0], X[1] + dx[1]], [Y[0] + dy[0], Y[1] + dy[1]],
                         gb, eta, etat, grad)

        Z = (0, 0)
        E = ((h, 0), (0, h))

        def add(a, b, s=1):
            return (a[0] + s * b[0], a[1] + s * b[1])

        g = mp.matrix(2, 2)
        M = mp.matrix(2, 2)
        for i in range(2):
            for j in range(2):
                g[i, j] = (L(Z, add(E[i], E[j])) - L(Z, add(E[i], E[j], -1))
                           - L(Z, add(E[j], E[i], -1)) + L(Z, add(add(Z, E[i], -1), E[j], -1))
                           ) / (8 * h * h)
                M[i, j] = (L(E[i], E[j]) - L(E[i], add(Z, E[j], -1)) - L(add(Z, E[i], -1), E[j])
                           + L(add(Z, E[i], -1), add(Z, E[j], -1))) / (4 * h * h)
        dx = [(L(E[k], Z) - L(add(Z, E[k], -1), Z)) / (2 * h) for k in range(2)]
        rhs = mp.matrix([sum(M[k, l] * Y[k] for k in range(2)) - dx[l] for l in range(2)])
        G = mp.lu_solve(g, rhs) / 4
        return np.array([float(G[0]), float(G[1])])


def phi_derivs(b2, s, gbar, eta, etat, h=1e-5, dps=40):
    """phi(b^2, s) and its central-difference derivatives phi_1, phi_2, phi_12, phi_22.

    b^2 = |G|^2 / gbar^2 and s = beta / alpha, so G2 = gbar^2 b^2 and sigma = gbar s.
    Each phi value is polished to `dps` digits so only truncation error remains.
    """
    with mp.workdps(dps):
        gb = mp.mpf(gbar)
        e, et = mp.mpf(eta), mp.mpf(etat)

        def f(db, ds):
            B2 = mp.mpf(b2) + db
            S = mp.mpf(s) + ds
            return mp_phi(gb * S, gb * gb * B2, e, et)

        H = mp.mpf(h)
        phi = f(0, 0)
        p1 = (f(H, 0) - f(-H, 0)) / (2 * H)
        p2 = (f(0, H) - f(0, -H)) / (2 * H)
        p22 = (f(0, H) - 2 * phi + f(0, -H)) / (H * H)
        p12 = (f(H, H) - f(H, -H) - f(-H, H) + f(-H, -H)) / (4 * H * H)
        return tuple(float(v) for v in (phi, p1, p2, p12, p22))


def ab_spray_terms(b2, s, gbar, eta, etat, h=1e-9):
    """Theta, Psi, Omega, Pi, R, Q of the general (alpha, beta)-metric spray."""
    phi, p1, p2, p12, p22 = phi_derivs(b2, s, gbar, eta, etat, h=h)
    d = phi - s * p2
    den = d + (b2 - s * s) * p22
    Q = p2 / d
    Th = (d * p2 - s * phi * p22) / (2 * phi * den)
    Ps = p22 / (2 * den)
    Pi = (d * p12 - s * p1 * p22) / (d * den)
    Om = 2 * p1 / phi - (s * phi + (b2 - s * s) * p2) / phi * Pi
    R = p1 / d
    return {"Theta": Th, "Psi": Ps, "Omega": Om, "Pi": Pi, "R": R, "Q": Q, "phi": phi}
