"""Surfaces z = f(x1, x2), the induced metric h, gravitational wind and curvature terms."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import expr as _expr
from . import kernels
from .errors import ExprError

GAUSS3_SOURCE = ("(1/2)*exp(-((x1-1)^2+(x2+1)^2)) + (3/4)*exp(-((x1+1)^2+(x2+1)^2))"
                 " + exp(-(x1^2+(x2-1)^2))")


class Surface:
    """Height function with second-order jets.

    Built via :func:`parse_surface` from "expr:<formula>", "incline:<a>" or "gauss3".
    ``kind`` is the kernel surface code for built-ins and None for expressions.
    """

    def __init__(self, spec, kind=None, a=0.0, tree=None):
        self.spec = spec
        self.kind = kind
        self.a = a
        self.tree = tree

    def __repr__(self):
        return f"Surface({self.spec!r})"

    def jet(self, x1, x2):
        """Jet2 at a point, or a Jet2 of arrays for array input."""
        if self.kind == kernels.SURF_INCLINE:
            if isinstance(x1, np.ndarray) or isinstance(x2, np.ndarray):
                x1, x2 = np.broadcast_arrays(np.asarray(x1, float), np.asarray(x2, float))
                z = np.zeros_like(x1)
                return _expr.Jet2(self.a * x1, z + self.a, z, z, z, z)
            return _expr.Jet2(self.a * float(x1), self.a, 0.0, 0.0, 0.0, 0.0)
        if self.kind == kernels.SURF_GAUSS3:
            if isinstance(x1, np.ndarray) or isinstance(x2, np.ndarray):
                return _gauss3_grid(*np.broadcast_arrays(np.asarray(x1, float),
                                                         np.asarray(x2, float)))
            return _expr.Jet2(*kernels.gauss3_jet(float(x1), float(x2)))
        return _expr.eval_jet2(self.tree, x1, x2)

    def derivs(self, x1, x2):
        """(f1, f2, f11, f12, f22) at a point as plain floats."""
        j = self.jet(x1, x2)
        return j.g1, j.g2, j.h11, j.h12, j.h22


def _gauss3_grid(x1, x2):
    out = [np.zeros_like(x1) for _ in range(6)]
    for c, u, v in ((0.5, x1 - 1.0, x2 + 1.0), (0.75, x1 + 1.0, x2 + 1.0), (1.0, x1, x2 - 1.0)):
        e = c * np.exp(-(u * u + v * v))
        out[0] += e
        out[1] -= 2.0 * u * e
        out[2] -= 2.0 * v * e
        out[3] += (4.0 * u * u - 2.0) * e
        out[4] += 4.0 * u * v * e
        out[5] += (4.0 * v * v - 2.0) * e
    return _expr.Jet2(*out)


def parse_surface(spec: str) -> Surface:
    if isinstance(spec, Surface):
        return spec
    spec = spec.strip()
    if spec == "gauss3":
        return Surface(spec, kind=kernels.SURF_GAUSS3)
    if spec.startswith("incline:"):
        try:
            a = float(spec[len("incline:"):])
        except ValueError:
            raise ExprError(f"bad incline slope in {spec!r}") from None
        if not math.isfinite(a):
            raise ExprError(f"bad incline slope in {spec!r}")
        return Surface(spec, kind=kernels.SURF_INCLINE, a=a)
    if spec.startswith("expr:"):
        return Surface(spec, tree=_expr.parse(spec[len("expr:"):]))
    raise ExprError(f"unknown surface spec {spec!r} (use expr:<formula>, incline:<a> or gauss3)")


@dataclass(frozen=True)
class PointGeometry:
    jet: _expr.Jet2
    q: float
    h: tuple
    wind: tuple
    windNorm: float
    gbar: float
    x: tuple = (0.0, 0.0)

    @property
    def f1(self):
        return self.jet.g1

    @property
    def f2(self):
        return self.jet.g2

    def h_inner(self, u, v):
        f1, f2 = self.jet.g1, self.jet.g2
        return u[0] * v[0] + u[1] * v[1] + (f1 * u[0] + f2 * u[1]) * (f1 * v[0] + f2 * v[1])

    def h_norm(self, u):
        return math.sqrt(self.h_inner(u, u))


@dataclass(frozen=True)
class CurvatureData:
    r00: tuple
    r0: tuple
    r: float
    rup: tuple


def geometry_from_jet(jet, gbar, x=(0.0, 0.0)) -> PointGeometry:
    if gbar < 0:
        raise ValueError("gbar must be non-negative")
    f1, f2 = float(jet.g1), float(jet.g2)
    q = f1 * f1 + f2 * f2
    opq = 1.0 + q
    h = ((1.0 + f1 * f1, f1 * f2), (f1 * f2, 1.0 + f2 * f2))
    wind = (-gbar * f1 / opq, -gbar * f2 / opq)
    return PointGeometry(jet, q, h, wind, gbar * math.sqrt(q / opq), float(gbar), tuple(x))


def point_geometry(surface, x1, x2, gbar) -> PointGeometry:
    surface = parse_surface(surface)
    return geometry_from_jet(surface.jet(x1, x2), gbar, (float(x1), float(x2)))


def curvature_from_jet(jet) -> CurvatureData:
    f1, f2 = jet.g1, jet.g2
    f11, f12, f22 = jet.h11, jet.h12, jet.h22
    opq = 1.0 + f1 * f1 + f2 * f2
    hf1 = f11 * f1 + f12 * f2
    hf2 = f12 * f1 + f22 * f2
    opq2 = opq * opq
    opq3 = opq2 * opq
    r00 = ((f11 / opq, f12 / opq), (f12 / opq, f22 / opq))
    r0 = (hf1 / opq2, hf2 / opq2)
    r = (f1 * hf1 + f2 * hf2) / opq3
    # r^i = h^{ij} r_j with h^{-1} = adj(h) / (1 + q)
    rup = (((1.0 + f2 * f2) * hf1 - f1 * f2 * hf2) / opq3,
           ((1.0 + f1 * f1) * hf2 - f1 * f2 * hf1) / opq3)
    return CurvatureData(r00, r0, r, rup)


def curvature_data(surface, x1, x2, gbar=0.0) -> CurvatureData:
    """Curvature scalars; they depend only on f, so gbar is accepted for symmetry only."""
    surface = parse_surface(surface)
    return curvature_from_jet(surface.jet(x1, x2))


def alpha_beta(geom: PointGeometry, y):
    f1, f2 = geom.jet.g1, geom.jet.g2
    beta = f1 * y[0] + f2 * y[1]
    return math.sqrt(y[0] * y[0] + y[1] * y[1] + beta * beta), beta
