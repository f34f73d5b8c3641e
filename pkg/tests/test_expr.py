import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from slopenav.errors import DomainError, ExprError
from slopenav.expr import Bin, Num, Var, eval_jet2, parse, to_source


def test_division_ast():
    assert parse("x1/2") == Bin("/", Var("x1"), Num(2.0))


def test_gaussian_bump_parses():
    e = parse("(1/2)*exp(-((x1-1)^2+(x2+1)^2))")
    j = eval_jet2(e, 1.0, -1.0)
    assert j.value == pytest.approx(0.5)
    assert j.grad == pytest.approx((0.0, 0.0))
    assert j.hess[0][0] == pytest.approx(-1.0)


def test_syntax_error_offset():
    with pytest.raises(ExprError) as ei:
        parse("x1 + + 2")
    assert ei.value.offset == 5


@pytest.mark.parametrize("src", ["x3 + 1", "foo(x1)", "exp(x1, x2)", "", "(x1", "x1 2"])
def test_rejects(src):
    with pytest.raises(ExprError):
        parse(src)


def test_linear_jet():
    j = eval_jet2(parse("x1/2"), 0.0, 0.0)
    assert (j.value, j.grad, j.hess) == (0.0, (0.5, 0.0), ((0.0, 0.0), (0.0, 0.0)))


def test_polynomial_jet():
    j = eval_jet2(parse("x1^2*x2"), 2.0, 3.0)
    assert j.value == 12.0
    assert j.grad == (12.0, 4.0)
    assert j.hess == ((6.0, 4.0), (4.0, 0.0))


def test_precedence_and_associativity():
    assert eval_jet2(parse("2^3^2"), 0, 0).value == 512.0
    assert eval_jet2(parse("-2^2"), 0, 0).value == -4.0
    assert eval_jet2(parse("8/4/2"), 0, 0).value == 1.0
    assert eval_jet2(parse("1-2-3"), 0, 0).value == -4.0
    assert eval_jet2(parse("2*3+4*5"), 0, 0).value == 26.0


def test_domain_errors_name_subexpression():
    with pytest.raises(DomainError, match="sqrt"):
        eval_jet2(parse("1 + sqrt(x1 - 2)"), 0.0, 0.0)
    with pytest.raises(DomainError, match="ln"):
        eval_jet2(parse("ln(x2)"), 1.0, -1.0)
    with pytest.raises(DomainError):
        eval_jet2(parse("1/(x1-x1)"), 0.3, 0.0)


def test_functions_match_math():
    j = eval_jet2(parse("exp(x1)*sin(x2) + cos(x1*x2) + sqrt(x1+2) + ln(x2+3)"), 0.3, 0.7)
    v = math.exp(0.3) * math.sin(0.7) + math.cos(0.21) + math.sqrt(2.3) + math.log(3.7)
    assert j.value == pytest.approx(v, rel=1e-15)


def test_hessian_symmetric_storage():
    j = eval_jet2(parse("exp(x1*x2^2)*sin(x1)"), 0.4, -0.9)
    assert j.hess[0][1] == j.hess[1][0]


def test_deterministic():
    e = parse("exp(-(x1^2+x2^2))*cos(3*x1)")
    assert eval_jet2(e, 0.1, 0.2).astuple() == eval_jet2(e, 0.1, 0.2).astuple()


def test_array_evaluation_matches_scalar():
    e = parse("x1^3 - 2*x1*x2 + exp(x2/3)")
    xs = np.linspace(-1, 1, 7)
    ys = np.linspace(0, 2, 7)
    ja = eval_jet2(e, xs, ys)
    for k in range(7):
        js = eval_jet2(e, float(xs[k]), float(ys[k]))
        assert np.asarray(ja.h12)[k] == pytest.approx(js.h12, rel=1e-14, abs=1e-14)
        assert np.asarray(ja.g1)[k] == pytest.approx(js.g1, rel=1e-14, abs=1e-14)


def _random_poly(rng):
    terms = []
    for _ in range(rng.randint(1, 6)):
        i = rng.randint(0, 4)
        j = rng.randint(0, 4 - i)
        c = round(rng.uniform(-3, 3), 3)
        terms.append(f"({c})*x1^{i}*x2^{j}")
    return " + ".join(terms)


def _fd(e, x, y, h=1e-4):
    f = lambda a, b: eval_jet2(e, a, b).value  # noqa: E731
    g1 = (f(x + h, y) - f(x - h, y)) / (2 * h)
    g2 = (f(x, y + h) - f(x, y - h)) / (2 * h)
    f11 = (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / h ** 2
    f22 = (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / h ** 2
    f12 = (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h)
    return (g1, g2), (f11, f12, f22)


def _rel(a, b, scale):
    return abs(a - b) / max(scale, 1.0)


def test_fifty_random_polynomials_vs_finite_differences():
    rng = random.Random(7)
    for _ in range(50):
        src = _random_poly(rng)
        e = parse(src)
        x, y = rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)
        j = eval_jet2(e, x, y)
        g, hs = _fd(e, x, y)
        gs = max(abs(j.g1), abs(j.g2))
        assert _rel(j.g1, g[0], gs) < 1e-6 and _rel(j.g2, g[1], gs) < 1e-6, src
        hsc = max(abs(j.h11), abs(j.h12), abs(j.h22))
        for a, b in zip((j.h11, j.h12, j.h22), hs):
            assert _rel(a, b, hsc) < 1e-4, src


_atoms = st.sampled_from(["x1", "x2", "1", "2.5", "0.5"])


@st.composite
def _sources(draw, depth=3):
    if depth == 0 or draw(st.booleans()):
        return draw(_atoms)
    kind = draw(st.sampled_from(["bin", "neg", "call", "pow"]))
    if kind == "bin":
        op = draw(st.sampled_from(["+", "-", "*", "/"]))
        return f"({draw(_sources(depth - 1))}){op}({draw(_sources(depth - 1))})"
    if kind == "neg":
        return f"-({draw(_sources(depth - 1))})"
    if kind == "pow":
        return f"({draw(_sources(depth - 1))})^{draw(st.sampled_from(['2', '3', 'x1']))}"
    fn = draw(st.sampled_from(["exp", "sin", "cos", "sqrt", "ln"]))
    return f"{fn}({draw(_sources(depth - 1))})"


@settings(max_examples=200, deadline=None)
@given(_sources())
def test_print_reparse_roundtrip(src):
    tree = parse(src)
    assert parse(to_source(tree)) == tree
