"""The (eta, etaTilde)-slope metric F and its indicatrix.

F(x, y) is the unique positive root of a quartic whose coefficients depend on
alpha = |y|_h, beta = df(y), the wind norm |G^T|_h and gbar. Writing
phi = F/alpha and sigma = gbar*beta/alpha the quartic only involves
(phi, sigma, |G^T|^2), which is what the kernels solve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

from . import kernels
from .errors import ConvexityViolation, RootCountError
from .params import as_params, frame_to_tangent, tangent_to_frame
from .surface import PointGeometry, alpha_beta


@dataclass(frozen=True)
class MetricEval:
    alpha: float
    beta: float
    s: float
    F: float
    residual: float
    branch: str


@dataclass(frozen=True)
class IndicatrixPoint:
    theta: float
    X: float
    Y: float
    y: tuple


def check_admissible(geom: PointGeometry, params):
    p = as_params(params)
    if geom.windNorm >= p.windBound:
        raise ConvexityViolation(
            f"wind norm {geom.windNorm:.6g} >= strong convexity bound {p.windBound:.6g}"
            f" for (eta, etaTilde) = ({p.eta}, {p.etaTilde})")
    return p


def slope_metric(geom: PointGeometry, y, params) -> MetricEval:
    p = check_admissible(geom, params)
    alpha, beta = alpha_beta(geom, y)
    if alpha == 0.0:
        return MetricEval(0.0, 0.0, 0.0, 0.0, 0.0, "riemannian")
    G2 = geom.windNorm * geom.windNorm
    sigma = geom.gbar * beta / alpha
    phi, br, st = kernels.phi_root(sigma, G2, p.eta, p.etaTilde)
    if st != kernels.OK:
        raise RootCountError(
            f"quartic did not yield exactly one positive root (sigma={sigma!r}, G2={G2!r},"
            f" eta={p.eta!r}, etaTilde={p.etaTilde!r})")
    res, _ = kernels.phi_residual(phi, sigma, G2, p.eta, p.etaTilde)
    return MetricEval(alpha, beta, beta / alpha, alpha * phi, abs(res) * alpha * alpha,
                      kernels.BRANCHES[br])


def metric_value(geom: PointGeometry, y, params) -> float:
    """F only; same checks as slope_metric."""
    return slope_metric(geom, y, params).F


def randers_oracle(geom: PointGeometry, y, eta) -> float:
    """Closed form on the diagonal eta = etaTilde (Zermelo navigation with wind (1-eta)G^T)."""
    e1 = 1.0 - eta
    g = geom.windNorm
    if e1 * g >= 1.0:
        raise ConvexityViolation(f"(1-eta)|G^T| = {e1 * g:.6g} >= 1")
    alpha, beta = alpha_beta(geom, y)
    lam = 1.0 - e1 * e1 * g * g
    gb = geom.gbar * beta
    return (math.sqrt(lam * alpha * alpha + e1 * e1 * gb * gb) + e1 * gb) / lam


def matsumoto_oracle(geom: PointGeometry, y, etaTilde) -> float:
    """Closed form on the edge eta = 1: |y|^2 / (|y| + (1-etaTilde) h(y, G^T))."""
    if (1.0 - etaTilde) * geom.windNorm >= 0.5:
        raise ConvexityViolation(f"(1-etaTilde)|G^T| = {(1.0 - etaTilde) * geom.windNorm:.6g} >= 1/2")
    alpha = geom.h_norm(y)
    return alpha * alpha / (alpha + (1.0 - etaTilde) * geom.h_inner(y, geom.wind))


def navigation_condition(geom: PointGeometry, params) -> bool:
    p = as_params(params)
    g = geom.windNorm
    num = 1.0 - (1.0 - p.etaTilde) * g
    den = 1.0 - (p.eta - p.etaTilde) * g
    return num / den > 0.0 if den != 0.0 else False


def indicatrix_xy(windNorm, params, theta):
    """Frame coordinates of the resultant velocity for self-velocity angle theta."""
    p = as_params(params)
    g = windNorm
    c, s = math.cos(theta), math.sin(theta)
    m = 1.0 + (p.eta - p.etaTilde) * g * c
    return m * c + (1.0 - p.eta) * g, m * s


def indicatrix_implicit(windNorm, params, X, Y):
    """Left minus right side of the implicit indicatrix equation in frame coordinates."""
    p = as_params(params)
    g = windNorm
    lhs = math.hypot(X - (1.0 - p.eta) * g, Y)
    rhs = (X * X + Y * Y - (2.0 - p.eta - p.etaTilde) * X * g
           + (1.0 - p.eta) * (1.0 - p.etaTilde) * g * g)
    return lhs - rhs


def indicatrix(geom: PointGeometry, params, thetas):
    """Indicatrix points for self-velocity angles; the h-unit circle where q = 0."""
    p = check_admissible(geom, params)
    out = []
    for th in thetas:
        th = float(th)
        if geom.q == 0.0:
            X, Y = math.cos(th), math.sin(th)
        else:
            X, Y = indicatrix_xy(geom.windNorm, p, th)
        out.append(IndicatrixPoint(th, X, Y, frame_to_tangent(geom, X, Y)))
    return out


def radius_along(geom: PointGeometry, params, psi) -> float:
    """Length of the indicatrix ray in frame direction psi, i.e. 1/F of the unit frame vector."""
    y = frame_to_tangent(geom, math.cos(psi), math.sin(psi))
    return 1.0 / metric_value(geom, y, params)


def heading_for_direction(geom: PointGeometry, params, psi) -> float:
    """Self-velocity angle whose resultant points in frame direction psi."""
    p = check_admissible(geom, params)

    def dang(th):
        X, Y = indicatrix_xy(geom.windNorm, p, th)
        return math.remainder(math.atan2(Y, X) - psi, 2.0 * math.pi)

    # the resultant angle is monotone in theta on a convex indicatrix around the origin
    n = 720
    prev_t = psi - math.pi
    prev = dang(prev_t)
    for k in range(1, n + 1):
        t = psi - math.pi + 2.0 * math.pi * k / n
        cur = dang(t)
        if prev == 0.0:
            return prev_t
        if prev < 0.0 <= cur and cur - prev < math.pi:
            return brentq(dang, prev_t, t, xtol=1e-14)
        prev_t, prev = t, cur
    raise RootCountError(f"no self-velocity angle maps to direction {psi}")


def frame_coordinates(geom: PointGeometry, y):
    return tangent_to_frame(geom, y)


def crossing_directions(geom: PointGeometry, params_a, params_b, n=3600):
    """Frame directions psi in [0, 2pi) where two indicatrices have equal radius."""
    check_admissible(geom, params_a)
    check_admissible(geom, params_b)

    def diff(psi):
        return radius_along(geom, params_a, psi) - radius_along(geom, params_b, psi)

    out = []
    grid = [2.0 * math.pi * k / n for k in range(n + 1)]
    vals = [diff(p) for p in grid]
    scale = max(abs(v) for v in vals)
    if scale == 0.0:
        return out
    for k in range(n):
        a, b = vals[k], vals[k + 1]
        if a == 0.0:
            out.append(grid[k])
        elif a * b < 0.0:
            out.append(brentq(diff, grid[k], grid[k + 1], xtol=1e-13))
    return out
