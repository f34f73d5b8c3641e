"""Strong-convexity survey: steepest point of a surface and the admissible gravity range."""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import minimize

from .params import as_params, classify
from .surface import parse_surface

# smallest wind bound over the whole parameter square (MAT and CROSS corners)
WORST_BOUND = 0.5


def _steepness(q):
    return np.sqrt(q / (1.0 + q))


def max_steepness(surface, region=(-3.0, -3.0, 3.0, 3.0), gridN=256):
    """Maximum of sqrt(q/(q+1)) over an axis-aligned box (x1min, x2min, x1max, x2max).

    A grid scan picks the start, Nelder-Mead polishes it. Returns (m, (x1, x2)).
    """
    if gridN < 32:
        raise ValueError("gridN must be at least 32")
    surface = parse_surface(surface)
    x1a, x2a, x1b, x2b = map(float, region)
    if not (x1a < x1b and x2a < x2b):
        raise ValueError("region must be (x1min, x2min, x1max, x2max) with min < max")
    g1 = np.linspace(x1a, x1b, gridN)
    g2 = np.linspace(x2a, x2b, gridN)
    X1, X2 = np.meshgrid(g1, g2, indexing="ij")
    j = surface.jet(X1, X2)
    A = _steepness(np.asarray(j.g1) ** 2 + np.asarray(j.g2) ** 2)
    k = int(np.argmax(A))
    i1, i2 = np.unravel_index(k, A.shape)
    best = float(A[i1, i2])
    x0 = np.array([g1[i1], g2[i2]])
    if np.ptp(A) == 0.0:
        return best, (float(x0[0]), float(x0[1]))

    def neg(p):
        x = min(max(p[0], x1a), x1b)
        y = min(max(p[1], x2a), x2b)
        f1, f2 = surface.derivs(x, y)[:2]
        return -math.sqrt((f1 * f1 + f2 * f2) / (1.0 + f1 * f1 + f2 * f2))

    step = max((x1b - x1a), (x2b - x2a)) / gridN
    simplex = np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])
    res = minimize(neg, x0, method="Nelder-Mead",
                   options={"xatol": 1e-9, "fatol": 1e-15, "initial_simplex": simplex,
                            "maxiter": 2000})
    x = np.clip(res.x, [x1a, x2a], [x1b, x2b])
    m = -neg(x)
    if m < best:
        return best, (float(x0[0]), float(x0[1]))
    return m, (float(x[0]), float(x[1]))


def gbar_bound(surface, region=(-3.0, -3.0, 3.0, 3.0), params=None, gridN=256):
    """Largest gbar keeping the slope metric strongly convex over the region: b0(eta, etaTilde)/m.

    params=None gives the bound valid for every traction pair (b0 = 1/2).
    """
    if params is None:
        b0 = WORST_BOUND
    else:
        b0 = as_params(params).windBound
    if math.isinf(b0):
        return math.inf
    m, _ = max_steepness(surface, region, gridN)
    if m == 0.0:
        return math.inf
    return b0 / m


def bound_surface(gridN=64, ceiling=5.0):
    """b0 sampled on a gridN x gridN lattice of [0,1]^2, clamped at ceiling.

    Returns (eta, etaTilde, b0) arrays indexed [i_eta, i_etaTilde].
    """
    if gridN < 16:
        raise ValueError("gridN must be at least 16")
    t = np.linspace(0.0, 1.0, gridN)
    E, Et = np.meshgrid(t, t, indexing="ij")
    B = np.empty_like(E)
    for i in range(gridN):
        for k in range(gridN):
            B[i, k] = classify(E[i, k], Et[i, k]).windBound
    if ceiling is not None:
        B = np.minimum(B, ceiling)
    return E, Et, B
