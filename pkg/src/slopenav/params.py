"""Traction parameters (eta, etaTilde): region partition, wind bound and wind decomposition.

eta is the cross-traction coefficient (share of the lateral wind canceled),
etaTilde the along-traction coefficient. The four corners of the unit square
are ZNP (0,0), MAT (1,0), CROSS (0,1) and RIEM (1,1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .surface import PointGeometry

REGIONS = ("D1", "D2", "D3", "D4", "RIEM")
SUBREGIONS = ("R1", "R2", "R3", "R4", "L0", "L1", "L2", "interiorD3", "interiorD4", "none")

CORNERS = {"ZNP": (0.0, 0.0), "MAT": (1.0, 0.0), "CROSS": (0.0, 1.0), "RIEM": (1.0, 1.0)}


def in_d1(eta, etat):
    return eta >= etat > 2.0 * eta - 1.0 and not (eta == 1.0 and etat == 1.0)


def in_d2(eta, etat):
    return (3.0 * etat - 1.0) / 2.0 < eta < etat


def in_d3(eta, etat):
    return eta >= 0.5 and etat <= 2.0 * eta - 1.0 and not (eta == 1.0 and etat == 1.0)


def in_d4(eta, etat):
    return etat >= 1.0 / 3.0 and eta <= (3.0 * etat - 1.0) / 2.0 and not (eta == 1.0 and etat == 1.0)


def in_riem(eta, etat):
    return eta == 1.0 and etat == 1.0


REGION_TESTS = {"D1": in_d1, "D2": in_d2, "D3": in_d3, "D4": in_d4, "RIEM": in_riem}


@dataclass(frozen=True)
class TractionParams:
    eta: float
    etaTilde: float
    region: str
    subregion: str
    windBound: float

    @property
    def is_riemannian(self):
        return self.region == "RIEM"


def _subregion(region, eta, etat):
    if region == "D1":
        if eta == etat:
            return "L0"
        return "R1" if eta < 0.5 else "R3"
    if region == "D2":
        return "R2" if etat < 1.0 / 3.0 else "R4"
    if region == "D3":
        return "L1" if eta == 1.0 else "interiorD3"
    if region == "D4":
        return "L2" if etat == 1.0 else "interiorD4"
    return "none"


def classify(eta, etaTilde) -> TractionParams:
    eta = float(eta)
    etat = float(etaTilde)
    for name, v in (("eta", eta), ("etaTilde", etat)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {v}")
    for region in REGIONS:
        if REGION_TESTS[region](eta, etat):
            break
    else:  # pragma: no cover - the partition is exhaustive
        raise AssertionError(f"no region for ({eta}, {etat})")
    if region in ("D1", "D2"):
        bound = 1.0 / (1.0 - etat)
    elif region in ("D3", "D4"):
        bound = 1.0 / (2.0 * abs(eta - etat))
    else:
        bound = math.inf
    return TractionParams(eta, etat, region, _subregion(region, eta, etat), bound)


def as_params(p) -> TractionParams:
    if isinstance(p, TractionParams):
        return p
    if isinstance(p, str):
        return classify(*CORNERS[p.upper()])
    return classify(*p)


def reduction_coefficients(eta, etaTilde):
    """Which one-parameter slippery problem a pair reduces to, with its rescaled wind factor."""
    eta = float(eta)
    etat = float(etaTilde)
    if eta == 1.0 and etat == 1.0:
        raise ValueError("(1, 1) has no reduction: the metric is Riemannian")
    if eta > etat:
        return "SLIPPERY", (eta - etat) / (1.0 - etat), 1.0 - etat
    if eta < etat:
        return "S-CROSS", (etat - eta) / (1.0 - eta), 1.0 - eta
    return "R-ZNP", 0.0, 1.0 - eta


def frame(geom: PointGeometry):
    """Orthonormal frame (e1 steepest downhill, e2) in tangent coordinates, or None at q = 0."""
    if geom.q == 0.0:
        return None
    f1, f2 = geom.jet.g1, geom.jet.g2
    g = math.hypot(f1, f2)
    n1, n2 = f1 / g, f2 / g
    s = math.sqrt(1.0 + geom.q)
    return (-n1 / s, -n2 / s), (n2, -n1)


def unit_heading(geom: PointGeometry, theta):
    """h-unit self-velocity at angle theta from steepest descent (Euclidean basis at q = 0)."""
    c, s = math.cos(theta), math.sin(theta)
    fr = frame(geom)
    if fr is None:
        return (c, s)
    e1, e2 = fr
    return (c * e1[0] + s * e2[0], c * e1[1] + s * e2[1])


def frame_to_tangent(geom: PointGeometry, X, Y):
    fr = frame(geom)
    if fr is None:
        return (X, Y)
    e1, e2 = fr
    return (X * e1[0] + Y * e2[0], X * e1[1] + Y * e2[1])


def tangent_to_frame(geom: PointGeometry, y):
    """(X, Y) of a tangent vector in the downhill frame."""
    if geom.q == 0.0:
        return (y[0], y[1])
    f1, f2 = geom.jet.g1, geom.jet.g2
    rq = math.sqrt(geom.q)
    X = -math.sqrt(1.0 + geom.q) * (f1 * y[0] + f2 * y[1]) / rq
    Y = (y[0] * f2 - y[1] * f1) / rq
    return X, Y


@dataclass(frozen=True)
class WindDecomposition:
    u: tuple
    gMat: tuple
    gMatPerp: tuple
    active: tuple
    dead: tuple
    resultant: tuple


def _combine(a, u, b, v):
    return (a * u[0] + b * v[0], a * u[1] + b * v[1])


def wind_decomposition(geom: PointGeometry, theta, params) -> WindDecomposition:
    p = as_params(params)
    u = unit_heading(geom, theta)
    w = geom.wind
    k = geom.h_inner(u, w)
    gmat = (k * u[0], k * u[1])
    perp = (w[0] - gmat[0], w[1] - gmat[1])
    active = _combine(p.eta - p.etaTilde, gmat, 1.0 - p.eta, w)
    dead = _combine(p.etaTilde - p.eta, gmat, p.eta, w)
    res = (u[0] + active[0], u[1] + active[1])
    return WindDecomposition(u, gmat, perp, active, dead, res)
