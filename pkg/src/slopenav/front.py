"""Time fronts (isochrones) from fans of time geodesics, and their envelopes."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvexityViolation, NumericError
from .geodesic import integrate, worker_count
from .params import CORNERS, TractionParams, as_params
from .surface import parse_surface

MIN_RAYS = 8


@dataclass
class TimeFront:
    center: tuple
    t: float
    samples: list  # (theta, endpoint array or None)
    params: TractionParams
    gbar: float
    errors: dict = field(default_factory=dict)  # ray index -> message
    paths: list = field(default_factory=list, repr=False)

    @property
    def thetas(self):
        return np.array([s[0] for s in self.samples])

    @property
    def endpoints(self):
        """(n, 2) array; rows of NaN mark rays that failed."""
        return np.array([s[1] if s[1] is not None else (math.nan, math.nan) for s in self.samples])

    @property
    def complete(self):
        return not self.errors

    def polar(self):
        """Polar angle in [0, 2pi) and radius of each valid endpoint about the center, sorted by angle."""
        e = self.endpoints
        ok = np.isfinite(e[:, 0])
        d = e[ok] - np.asarray(self.center, float)
        ang = np.mod(np.arctan2(d[:, 1], d[:, 0]), 2.0 * math.pi)
        rad = np.hypot(d[:, 0], d[:, 1])
        order = np.argsort(ang, kind="stable")
        return ang[order], rad[order]

    def radius_at(self, psi):
        """Radius in polar direction psi, linear between neighbouring samples."""
        ang, rad = self.polar()
        return np.interp(np.mod(psi, 2.0 * math.pi), ang, rad, period=2.0 * math.pi)

    def centroid(self):
        e = self.endpoints
        return np.nanmean(e, axis=0)


def _ray(args):
    surface, center, theta, p, gbar, t, dt, keep = args
    try:
        path = integrate(surface, center, theta, p, gbar, t, dt)
    except NumericError as exc:
        return None, str(exc), None
    return path.endpoint, None, path if keep else None


def time_front(surface, center, params, gbar, t, n=32, dt=1e-3, keep_paths=False) -> TimeFront:
    """Endpoints at time t of n geodesics with headings 2 pi k / n."""
    if n < MIN_RAYS:
        raise ValueError(f"a front needs at least {MIN_RAYS} rays")
    surface = parse_surface(surface)
    p = as_params(params)
    center = (float(center[0]), float(center[1]))
    thetas = [2.0 * math.pi * k / n for k in range(n)]
    jobs = [(surface, center, th, p, gbar, t, dt, keep_paths) for th in thetas]
    with ThreadPoolExecutor(worker_count(n)) as ex:
        results = list(ex.map(_ray, jobs))
    samples = [(th, r[0]) for th, r in zip(thetas, results)]
    errors = {k: r[1] for k, r in enumerate(results) if r[1] is not None}
    paths = [r[2] for r in results] if keep_paths else []
    return TimeFront(center, float(t), samples, p, float(gbar), errors, paths)


@dataclass
class Envelope:
    fronts: dict  # name -> TimeFront for ZNP, RIEM, MAT, CROSS

    @property
    def inner(self):
        return self.fronts["ZNP"], self.fronts["RIEM"]

    @property
    def outer(self):
        return self.fronts["MAT"], self.fronts["CROSS"]

    def inner_radius(self, psi):
        return np.minimum(self.fronts["ZNP"].radius_at(psi), self.fronts["RIEM"].radius_at(psi))

    def outer_radius(self, psi):
        return np.maximum(self.fronts["MAT"].radius_at(psi), self.fronts["CROSS"].radius_at(psi))

    def slack(self, front: TimeFront):
        """Largest violation of inner <= radius <= outer over the front's samples (<= 0 means inside)."""
        ang, rad = front.polar()
        lo = self.inner_radius(ang)
        hi = self.outer_radius(ang)
        return float(max(np.max(lo - rad), np.max(rad - hi)))


def envelope_bounds(surface, center, gbar, t, n=64, dt=1e-3) -> Envelope:
    """Fronts of the four corner problems; inner = min(ZNP, RIEM), outer = max(MAT, CROSS)."""
    fronts = {}
    for name in ("ZNP", "RIEM", "MAT", "CROSS"):
        fr = time_front(surface, center, CORNERS[name], gbar, t, n, dt)
        if fr.errors:
            raise ConvexityViolation(
                f"{name} front left the admissible set (wind norm must stay below 1/2): "
                + next(iter(fr.errors.values())))
        fronts[name] = fr
    return Envelope(fronts)
