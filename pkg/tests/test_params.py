import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slopenav.params import (REGION_TESTS, as_params, classify, frame, reduction_coefficients,
                             tangent_to_frame, frame_to_tangent, unit_heading,
                             wind_decomposition)
from slopenav.surface import point_geometry

from helpers import random_params

unit = st.floats(0.0, 1.0)


@pytest.mark.parametrize("pair,region,sub,b0", [
    ((0.7, 0.8), "D4", "interiorD4", 5.0),
    ((0.5, 0.5), "D1", "L0", 2.0),
    ((1.0, 0.0), "D3", "L1", 0.5),
    ((0.0, 1.0), "D4", "L2", 0.5),
    ((0.0, 0.0), "D1", "L0", 1.0),
    ((0.2, 1 / 3), "D2", "R4", 1.5),
    ((1.0, 1.0), "RIEM", "none", math.inf),
])
def test_classify_examples(pair, region, sub, b0):
    p = classify(*pair)
    assert (p.region, p.subregion) == (region, sub)
    assert p.windBound == pytest.approx(b0, rel=1e-12)


@pytest.mark.parametrize("bad", [(-0.1, 0.5), (0.5, 1.0001), (math.nan, 0.2)])
def test_out_of_range(bad):
    with pytest.raises(ValueError):
        classify(*bad)


def test_partition_exhaustive_and_disjoint():
    rng = np.random.default_rng(0)
    pts = rng.random((100_000, 2))
    for e, t in pts:
        hits = sum(fn(e, t) for fn in REGION_TESTS.values())
        assert hits == 1, (e, t)


def test_partition_on_boundary_lines_and_edges():
    ts = np.linspace(0, 1, 401)
    lines = [(t, 2 * t - 1) for t in ts if 0 <= 2 * t - 1 <= 1]
    lines += [((3 * t - 1) / 2, t) for t in ts if 0 <= (3 * t - 1) / 2 <= 1]
    lines += [(t, t) for t in ts] + [(1.0, t) for t in ts] + [(t, 1.0) for t in ts]
    lines += [(0.0, t) for t in ts] + [(t, 0.0) for t in ts]
    for e, t in lines:
        assert sum(fn(e, t) for fn in REGION_TESTS.values()) == 1, (e, t)


def test_bound_continuous_across_interior_curves():
    for t in np.linspace(0.5, 0.999, 50):
        a = 1 / (1 - (2 * t - 1))
        b = 1 / (2 * abs(t - (2 * t - 1)))
        assert a == pytest.approx(b, rel=1e-12)
    for t in np.linspace(1 / 3, 0.999, 50):
        e = (3 * t - 1) / 2
        assert 1 / (1 - t) == pytest.approx(1 / (2 * abs(e - t)), rel=1e-12)


@settings(max_examples=500)
@given(unit, unit)
def test_d34_bound_not_larger_than_matsumoto_type(e, t):
    p = classify(e, t)
    if p.region in ("D3", "D4") and t < 1:
        assert p.windBound <= 1 / (1 - t) * (1 + 1e-12)


@pytest.mark.parametrize("pair,expect", [
    ((0.8, 0.3), ("SLIPPERY", 5 / 7, 0.7)),
    ((0.2, 0.6), ("S-CROSS", 0.5, 0.8)),
    ((0.4, 0.4), ("R-ZNP", 0.0, 0.6)),
])
def test_reduction_coefficients(pair, expect):
    k, c, s = reduction_coefficients(*pair)
    assert k == expect[0]
    assert c == pytest.approx(expect[1], rel=1e-14)
    assert s == pytest.approx(expect[2], rel=1e-14)


def test_reduction_rejects_riemannian():
    with pytest.raises(ValueError):
        reduction_coefficients(1, 1)


def test_as_params_forms():
    assert as_params("mat") == classify(1, 0)
    assert as_params((0.2, 0.3)) == classify(0.2, 0.3)


def _geom(rng):
    return point_geometry("gauss3", rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0.1, 3))


def test_frame_orthonormal_in_h():
    rng = random.Random(1)
    for _ in range(200):
        g = _geom(rng)
        e1, e2 = frame(g)
        assert g.h_inner(e1, e1) == pytest.approx(1, rel=1e-13)
        assert g.h_inner(e2, e2) == pytest.approx(1, rel=1e-13)
        assert abs(g.h_inner(e1, e2)) < 1e-13
        # e1 points along the wind (steepest descent)
        assert g.h_inner(e1, g.wind) == pytest.approx(g.windNorm, rel=1e-12)
        X, Y = 0.3, -1.7
        assert tangent_to_frame(g, frame_to_tangent(g, X, Y)) == pytest.approx((X, Y), abs=1e-13)


def test_frame_undefined_at_critical_point():
    g = point_geometry("expr:x1^2+x2^2", 0, 0, 1)
    assert frame(g) is None
    assert unit_heading(g, 0.5) == (math.cos(0.5), math.sin(0.5))


def test_decomposition_invariants():
    rng = random.Random(2)
    for _ in range(1000):
        g = _geom(rng)
        p = random_params(rng, riem=True)
        d = wind_decomposition(g, rng.uniform(0, 2 * math.pi), p)
        assert g.h_norm(d.u) == pytest.approx(1, rel=1e-13)
        W = np.array(g.wind)
        assert np.allclose(np.add(d.gMat, d.gMatPerp), W, atol=1e-12)
        alt = (1 - p.eta) * np.array(d.gMatPerp) + (1 - p.etaTilde) * np.array(d.gMat)
        assert np.allclose(d.active, alt, atol=1e-12)
        assert np.allclose(np.add(d.active, d.dead), W, atol=1e-12)
        assert np.allclose(d.resultant, np.add(d.u, d.active), atol=1e-15)
        assert g.h_norm(d.active) <= g.windNorm * (1 + 1e-12)


def test_active_norm_equality_when_eta_zero_and_etatilde_zero():
    rng = random.Random(8)
    for _ in range(100):
        g = _geom(rng)
        d = wind_decomposition(g, rng.uniform(0, 6.28), (0.0, 0.0))
        assert g.h_norm(d.active) == pytest.approx(g.windNorm, rel=1e-12)


def test_traverse_and_diagonal_and_riemannian():
    rng = random.Random(3)
    g = _geom(rng)
    d = wind_decomposition(g, math.pi / 2, (0.3, 0.6))
    assert g.h_norm(d.gMat) < 1e-14
    assert np.allclose(d.active, 0.7 * np.array(g.wind), atol=1e-14)
    for th in np.linspace(0, 6, 7):
        d = wind_decomposition(g, th, (0.4, 0.4))
        assert np.allclose(d.active, 0.6 * np.array(g.wind), atol=1e-14)
    d = wind_decomposition(g, 1.0, (1.0, 1.0))
    assert d.active == (0.0, 0.0) and d.resultant == d.u


def test_critical_point_decomposition():
    g = point_geometry("expr:x1^2+x2^2", 0, 0, 2.0)
    d = wind_decomposition(g, 0.7, (0.2, 0.9))
    assert d.active == (0.0, 0.0) and d.resultant == d.u


def test_dead_active_symmetry():
    rng = random.Random(4)
    for _ in range(500):
        g = _geom(rng)
        e, t = rng.random(), rng.random()
        th = rng.uniform(0, 6.3)
        dead = wind_decomposition(g, th, (e, t)).dead
        act = wind_decomposition(g, th, (1 - e, 1 - t)).active
        assert np.allclose(dead, act, rtol=0, atol=1e-15)
