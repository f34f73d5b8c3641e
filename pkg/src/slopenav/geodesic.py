"""Time geodesics of the slope metric: spray coefficients and RK4 integration.

Geodesics solve x'' + 2 G(x, x') = 0 with F(x, x') = 1 along the path, so the
parameter is travel time. The production spray uses the formulas restricted
to the indicatrix (F = 1); ``spray_general`` keeps F free and is only used to
cross-check.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import AdmissibilityError, DegenerateDenominator, DriftError, ConvexityViolation
from .metric import check_admissible, metric_value
from .params import TractionParams, as_params, wind_decomposition
from .surface import CurvatureData, PointGeometry, alpha_beta, geometry_from_jet, parse_surface

DRIFT_TOL = 1e-6
_DENOM_EPS = 1e-13


@dataclass(frozen=True)
class SprayTerms:
    A: float
    B: float
    C: float
    E: float
    Theta: float
    Psi: float
    Omega: float
    Pi: float
    R: float


def spray_terms(geom: PointGeometry, y, params, F: float) -> SprayTerms:
    """Auxiliary scalars of the spray at (geom, y); F = 1 gives the indicatrix-restricted forms."""
    p = check_admissible(geom, params)
    eta, etat = p.eta, p.etaTilde
    al, beta = alpha_beta(geom, y)
    a2 = al * al
    a4 = a2 * a2
    a6 = a4 * a2
    G2 = geom.windNorm * geom.windNorm
    gbar = geom.gbar
    gb = gbar * beta
    e1, et1 = 1.0 - eta, 1.0 - etat
    k = 2.0 - eta - etat
    d = etat - eta
    d2 = d * d
    F2 = F * F
    F4 = F2 * F2
    A = -(e1 * (1.0 - k * et1 * G2) * F2 - k * k * gb * F - k * a2) / a2
    B = -((1.0 - 2.0 * e1 * et1 * G2) * F2 - 2.0 * k * gb * F - 2.0 * a2) / a2
    C = (a2 * B + gb * A * F) / (al * F)
    E = a6 * B * C * C + (G2 * a2 - gb * gb) * (a4 * A * A * B + d2 * F4)
    if abs(B) < _DENOM_EPS or abs(C) < _DENOM_EPS or abs(E) < _DENOM_EPS * max(1.0, a6 * F4):
        raise DegenerateDenominator(f"B={B!r} C={C!r} E={E!r}")
    gg = gbar * gbar
    core = et1 * a2 * B - d * F2
    R = e1 * gg / (2.0 * a4 * B) * core * F2
    Th = gbar * al / (2.0 * E * F) * (a6 * A * B * B - d2 * gb * F4 * F)
    Ps = gg * a2 / (2.0 * E) * (a4 * A * A * B + d2 * F4)
    Om = e1 * gg / (a2 * B * E) * (core * (a6 * B ** 3 + d2 * G2 * F4 * F2)
                                   - d2 * a2 * F4 * F * (gb * B + G2 * A * F))
    Pi = e1 * gg * gbar / (2.0 * a2 * al * B * E) * (
        core * (2.0 * a6 * A * B * B - d2 * gb * F4 * F)
        + d2 * a2 * B * F4 * (2.0 * a2 + e1 * gb * F)) * F
    return SprayTerms(A, B, C, E, Th, Ps, Om, Pi, R)


def _assemble(geom, curv: CurvatureData, y, t: SprayTerms):
    f1, f2 = geom.jet.g1, geom.jet.g2
    opq = 1.0 + geom.q
    al, _ = alpha_beta(geom, y)
    a2 = al * al
    r00 = (curv.r00[0][0] * y[0] * y[0] + 2.0 * curv.r00[0][1] * y[0] * y[1]
           + curv.r00[1][1] * y[1] * y[1])
    r0 = curv.r0[0] * y[0] + curv.r0[1] * y[1]
    big = r00 + 2.0 * a2 * t.R * curv.r
    cy = (t.Theta * big + al * t.Omega * r0) / al
    # -w^i/gbar = f_i/(1+q), finite at gbar = 0
    cb = (t.Psi * big + al * t.Pi * r0) / opq
    return (0.5 * r00 * f1 + cy * y[0] + cb * f1 - a2 * t.R * curv.rup[0],
            0.5 * r00 * f2 + cy * y[1] + cb * f2 - a2 * t.R * curv.rup[1])


def spray(geom: PointGeometry, curv: CurvatureData, y, params):
    """Spray G^i at a unit-F state (indicatrix-restricted formulas)."""
    p = as_params(params)
    if p.is_riemannian or geom.gbar == 0.0:
        check_admissible(geom, p)
        return _assemble(geom, curv, y, SprayTerms(0, 0, 0, 0, 0, 0, 0, 0, 0))
    return _assemble(geom, curv, y, spray_terms(geom, y, p, 1.0))


def spray_general(geom: PointGeometry, curv: CurvatureData, y, params):
    """Spray at any y != 0 using the actual F value (test entry point)."""
    p = as_params(params)
    if p.is_riemannian or geom.gbar == 0.0:
        check_admissible(geom, p)
        return _assemble(geom, curv, y, SprayTerms(0, 0, 0, 0, 0, 0, 0, 0, 0))
    F = metric_value(geom, y, p)
    return _assemble(geom, curv, y, spray_terms(geom, y, p, F))


def spray_fast(geom: PointGeometry, y, params):
    """Kernel version of :func:`spray`."""
    p = check_admissible(geom, params)
    j = geom.jet
    g1, g2, st = kernels.spray_tilde(j.g1, j.g2, j.h11, j.h12, j.h22, y[0], y[1],
                                     geom.gbar, p.eta, p.etaTilde)
    if st != kernels.OK:
        raise DegenerateDenominator("spray denominator vanished")
    return g1, g2


def initial_velocity(geom: PointGeometry, theta, params):
    """Resultant velocity u + active wind for self-velocity angle theta; F of it is 1."""
    p = check_admissible(geom, params)
    return wind_decomposition(geom, theta, p).resultant


@dataclass(frozen=True)
class GeodesicState:
    x: tuple
    y: tuple
    t: float


@dataclass
class GeodesicPath:
    data: np.ndarray  # rows t, x1, x2, y1, y2, F-1
    theta0: float
    params: TractionParams
    surface: str
    gbar: float
    dt: float = 0.0
    status: str = "ok"

    @property
    def t(self):
        return self.data[:, 0]

    @property
    def x(self):
        return self.data[:, 1:3]

    @property
    def y(self):
        return self.data[:, 3:5]

    @property
    def drift(self):
        return self.data[:, 5]

    @property
    def endpoint(self):
        return self.data[-1, 1:3].copy()

    @property
    def states(self):
        return [GeodesicState((r[1], r[2]), (r[3], r[4]), r[0]) for r in self.data]

    def __len__(self):
        return self.data.shape[0]


def _rk4_python(surface, x, y, p, gbar, h, nsteps, drift_tol, renorm):
    """RK4 driver for expression surfaces (spray from the kernel, jets from the parser)."""
    eta, etat = p.eta, p.etaTilde
    out = np.zeros((nsteps + 1, 6))

    def acc(x1, x2, y1, y2):
        f1, f2, f11, f12, f22 = surface.derivs(x1, x2)
        g1, g2, st = kernels.spray_tilde(f1, f2, f11, f12, f22, y1, y2, gbar, eta, etat)
        if st != kernels.OK:
            raise DegenerateDenominator("spray denominator vanished")
        return -2.0 * g1, -2.0 * g2

    x1, x2 = x
    y1, y2 = y
    f1, f2 = surface.derivs(x1, x2)[:2]
    out[0] = (0.0, x1, x2, y1, y2, kernels.slope_F(f1, f2, y1, y2, gbar, eta, etat)[0] - 1.0)
    for n in range(nsteps):
        a1 = acc(x1, x2, y1, y2)
        a2 = acc(x1 + 0.5 * h * y1, x2 + 0.5 * h * y2, y1 + 0.5 * h * a1[0], y2 + 0.5 * h * a1[1])
        v2 = (y1 + 0.5 * h * a1[0], y2 + 0.5 * h * a1[1])
        a3 = acc(x1 + 0.5 * h * v2[0], x2 + 0.5 * h * v2[1], y1 + 0.5 * h * a2[0], y2 + 0.5 * h * a2[1])
        v3 = (y1 + 0.5 * h * a2[0], y2 + 0.5 * h * a2[1])
        v4 = (y1 + h * a3[0], y2 + h * a3[1])
        a4 = acc(x1 + h * v3[0], x2 + h * v3[1], v4[0], v4[1])
        x1 += h / 6.0 * (y1 + 2.0 * v2[0] + 2.0 * v3[0] + v4[0])
        x2 += h / 6.0 * (y2 + 2.0 * v2[1] + 2.0 * v3[1] + v4[1])
        y1 += h / 6.0 * (a1[0] + 2.0 * a2[0] + 2.0 * a3[0] + a4[0])
        y2 += h / 6.0 * (a1[1] + 2.0 * a2[1] + 2.0 * a3[1] + a4[1])
        f1, f2 = surface.derivs(x1, x2)[:2]
        q = f1 * f1 + f2 * f2
        if gbar * math.sqrt(q / (1.0 + q)) >= p.windBound:
            return out, kernels.INADMISSIBLE, n
        F, _, _, _, st = kernels.slope_F(f1, f2, y1, y2, gbar, eta, etat)
        if st != kernels.OK:
            return out, st, n
        if renorm:
            y1 /= F
            y2 /= F
        out[n + 1] = ((n + 1) * h, x1, x2, y1, y2, F - 1.0)
        if abs(F - 1.0) > drift_tol:
            return out, kernels.DRIFT, n + 1
    return out, kernels.OK, nsteps


def integrate(surface, x0, theta, params, gbar, T, dt=1e-3, drift_tol=DRIFT_TOL,
              renormalize=False) -> GeodesicPath:
    """Shoot the time geodesic leaving x0 with self-velocity angle theta up to time T.

    The step is T/ceil(T/dt) so the last state lands exactly on T.
    """
    surface = parse_surface(surface)
    p = as_params(params)
    if not T > 0 or not dt > 0:
        raise ValueError("T and dt must be positive")
    geom = geometry_from_jet(surface.jet(*x0), gbar, x0)
    try:
        check_admissible(geom, p)
    except ConvexityViolation as exc:
        raise AdmissibilityError(str(exc), None) from None
    y0 = initial_velocity(geom, theta, p)
    nsteps = max(1, int(math.ceil(T / dt - 1e-9)))
    h = T / nsteps
    bound = p.windBound if math.isfinite(p.windBound) else 1e300
    if surface.kind is not None:
        data, st, ndone = kernels.integrate_builtin(
            surface.kind, surface.a, float(x0[0]), float(x0[1]), y0[0], y0[1], float(gbar),
            p.eta, p.etaTilde, h, nsteps, drift_tol, bound, bool(renormalize))
    else:
        data, st, ndone = _rk4_python(surface, (float(x0[0]), float(x0[1])), y0, p, float(gbar),
                                      h, nsteps, drift_tol, bool(renormalize))
    if st == kernels.OK:
        # pin the final time exactly
        data[-1, 0] = T
    path = GeodesicPath(data[: ndone + 1], float(theta), p, surface.spec, float(gbar), h)
    if st == kernels.INADMISSIBLE:
        path.status = "inadmissible"
        raise AdmissibilityError(
            f"wind norm reached the convexity bound at t={(ndone + 1) * h:.6g}", path)
    if st == kernels.DRIFT:
        path.status = "drift"
        raise DriftError(f"|F-1| exceeded {drift_tol:g} at t={ndone * h:.6g}; try a smaller dt", path)
    if st == kernels.DEGENERATE:
        path.status = "degenerate"
        raise DegenerateDenominator(f"spray denominator vanished at t={ndone * h:.6g}")
    if st != kernels.OK:
        path.status = "rootcount"
        raise AdmissibilityError(f"metric root solve failed at t={(ndone + 1) * h:.6g}", path)
    return path


def path_time(surface, points, params, gbar) -> float:
    """Travel time of a polyline: sum of F(midpoint, segment)."""
    surface = parse_surface(surface)
    p = as_params(params)
    pts = np.asarray(points, float)
    total = 0.0
    for a, b in zip(pts[:-1], pts[1:]):
        mid = 0.5 * (a + b)
        geom = geometry_from_jet(surface.jet(mid[0], mid[1]), gbar)
        try:
            check_admissible(geom, p)
        except ConvexityViolation as exc:
            raise AdmissibilityError(str(exc)) from None
        j = geom.jet
        F, _, _, _, st = kernels.slope_F(j.g1, j.g2, b[0] - a[0], b[1] - a[1], geom.gbar,
                                         p.eta, p.etaTilde)
        if st != kernels.OK:
            raise AdmissibilityError("metric root solve failed along the polyline")
        total += F
    return total


def worker_count(n_tasks):
    """Thread count for fans; SLOPE_NAV_THREADS caps it."""
    cap = os.environ.get("SLOPE_NAV_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, int(cap))
        except ValueError:
            pass
    return max(1, min(n, n_tasks))
